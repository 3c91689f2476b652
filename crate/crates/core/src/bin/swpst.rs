use std::process::ExitCode;

fn main() -> ExitCode {
    match swpst::cli::run_from(std::env::args_os()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("swpst: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
