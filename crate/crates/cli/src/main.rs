use std::io::Write;

fn main() {
    let args: Vec<std::ffi::OsString> = std::env::args_os().collect();
    let out = ttg_cli::run(args.clone());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    if let Err(e) = ttg_cli::write_files(&args, &out) {
        eprintln!("cannot write output: {e}");
        std::process::exit(2);
    }
    std::process::exit(out.code);
}
