use std::io;
use std::process;
use std::thread;

// Deeply nested streams force recursively; give them room.
const STACK_SIZE: usize = 512 * 1024 * 1024;

fn main() {
    let code = thread::Builder::new()
        .stack_size(STACK_SIZE)
        .spawn(|| {
            let stdout = io::stdout();
            let stderr = io::stderr();
            sdreal::cli::run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
        })
        .expect("spawn worker thread")
        .join()
        .unwrap_or(101);
    process::exit(code);
}
