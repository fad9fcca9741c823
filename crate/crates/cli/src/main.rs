use std::process::ExitCode;

use tmf_arith_cli::{run, EXIT_NON_MEMBER, EXIT_OK};

fn main() -> ExitCode {
    let out = run(std::env::args_os());
    if out.code == EXIT_OK || out.code == EXIT_NON_MEMBER {
        print!("{}", out.text);
    } else {
        eprint!("{}", out.text);
    }
    ExitCode::from(out.code as u8)
}
