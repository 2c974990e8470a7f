fn main() -> std::process::ExitCode {
    syndetic::cli::main()
}
