//! Datasets shipped with the crate.

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, EdgeListOptions, GraphBuilder};

/// Names accepted by [`load_builtin`].
pub const BUILTIN_DATASETS: &[&str] = &["davis"];

const DAVIS_NODES: &str = include_str!("../data/davis_nodes.txt");
const DAVIS_EDGES: &str = include_str!("../data/davis.txt");

/// Loads an embedded dataset by name.
///
/// `davis` is the Davis–Gardner Southern Women attendance data: 18 women on
/// the left, 14 events on the right, in their usual published order.
pub fn load_builtin(name: &str) -> Result<BipartiteGraph> {
    match name.to_ascii_lowercase().as_str() {
        "davis" => {
            let options = EdgeListOptions::default();
            let mut builder = GraphBuilder::new(false);
            builder.read_node_list(DAVIS_NODES.as_bytes(), &options)?;
            builder.read_edge_list(DAVIS_EDGES.as_bytes(), &options)?;
            Ok(builder.build())
        }
        _ => Err(Error::Usage(format!(
            "unknown dataset `{name}`; available: {}",
            BUILTIN_DATASETS.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Side;

    #[test]
    fn davis_shape() {
        let g = load_builtin("davis").unwrap();
        assert_eq!(g.left_len(), 18);
        assert_eq!(g.right_len(), 14);
        assert_eq!(g.link_count(), 89);
        assert_eq!(g.labels(Side::Left)[0], "Evelyn");
        assert_eq!(g.labels(Side::Right)[13], "E14");
        assert_eq!(g.degree(Side::Left, "Evelyn").unwrap(), 8);
        assert_eq!(g.degree(Side::Right, "E8").unwrap(), 14);
        assert_eq!(g, load_builtin("davis").unwrap());
    }

    #[test]
    fn unknown_dataset_lists_choices() {
        let err = load_builtin("karate").unwrap_err();
        assert!(matches!(&err, Error::Usage(m) if m.contains("davis")));
    }
}
