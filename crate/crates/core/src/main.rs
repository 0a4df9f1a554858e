use std::io;
use std::process::ExitCode;
use std::thread;

fn main() -> ExitCode {
    // deep diagrams recurse once per level
    let child = thread::Builder::new()
        .stack_size(512 << 20)
        .spawn(|| {
            let args: Vec<_> = std::env::args_os().collect();
            zdd_reconf::cli::run(args, &mut io::stdout().lock(), &mut io::stderr().lock())
        })
        .expect("spawn solver thread");
    let code = child.join().unwrap_or(1);
    ExitCode::from(code as u8)
}
