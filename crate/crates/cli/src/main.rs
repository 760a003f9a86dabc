fn main() {
    std::process::exit(cstar_frames_cli::main_with_args(std::env::args_os()));
}
