use cheb_cli::{parse_args, run, threads_from_env, CliError};

fn fail(e: CliError) -> ! {
    match &e {
        CliError::Help(text) => print!("{text}"),
        CliError::Usage(problems) => {
            for p in problems {
                eprintln!("error: {p}");
            }
        }
        other => eprintln!("error: {other}"),
    }
    std::process::exit(e.exit_code())
}

fn main() {
    let cfg = parse_args(std::env::args_os().skip(1)).unwrap_or_else(|e| fail(e));
    match threads_from_env() {
        Ok(Some(n)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
            {
                eprintln!("warning: could not size thread pool: {e}");
            }
        }
        Ok(None) => {}
        Err(e) => fail(e),
    }
    match run(&cfg) {
        Ok(code) => std::process::exit(code),
        Err(e) => fail(e),
    }
}
