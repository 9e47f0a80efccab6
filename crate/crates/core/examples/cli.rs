//! Drives the command line in-process: scores, a k-sweep and a null-model query.

fn main() {
    for args in [
        vec!["hellrank", "scores", "--dataset", "davis", "--metric", "hellrank"],
        vec!["hellrank", "sweep-k", "--dataset", "davis", "--against", "degree2", "--kmax", "6"],
        vec!["hellrank", "null-model", "--n1", "50", "--n2", "50", "--p", "0.1", "--k", "5"],
    ] {
        println!("$ {}", args.join(" "));
        let status = hellrank::cli::run(args);
        println!("(exit {status})\n");
    }
}
