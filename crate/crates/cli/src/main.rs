use std::io::Write;

fn main() {
    if let Some(n) = std::env::var("FINITUDE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let args: Vec<String> = std::env::args().collect();
    let run = finitude_cli::run(&args);
    let _ = std::io::stdout().write_all(run.stdout.as_bytes());
    let _ = std::io::stderr().write_all(run.stderr.as_bytes());
    std::process::exit(run.exit);
}
