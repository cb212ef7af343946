fn main() {
    let (report, code) = homcolor::cli::run_command(std::env::args_os());
    print!("{report}");
    std::process::exit(code);
}
