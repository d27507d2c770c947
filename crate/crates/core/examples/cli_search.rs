//! Drives the command-line front end in-process.

fn main() {
    let code = sparsest::cli::run([
        "sparsest", "search", "--matrix", "skew:5", "--family", "pfaffians", "--t", "4", "--d-max", "2", "--k-max", "3",
    ]);
    println!("exit code {code}");
}
