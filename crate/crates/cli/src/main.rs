use std::io::Write;
use std::process::ExitCode;

use dualgarside::limits::LIMITS_ENV;
use dualgarside_cli::{io_failure, run};

fn main() -> ExitCode {
    let env_caps = std::env::var(LIMITS_ENV).ok();
    let mut output = run(std::env::args_os(), env_caps.as_deref());
    if let Some(path) = output.out.take() {
        if let Err(e) = std::fs::write(&path, &output.body) {
            output = io_failure(&path, &e);
        } else {
            output.body.clear();
        }
    }
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not worth reporting
    let _ = stdout.write_all(output.body.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(output.status as u8)
}
