use std::process::ExitCode;

fn main() -> ExitCode {
    if let Some(n) = std::env::var("MOMENTKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    let (report, code) = momentkit_cli::run(std::env::args().skip(1));
    print!("{}", report.render());
    ExitCode::from(code as u8)
}
