fn main() -> std::process::ExitCode {
    anosov_cert::cli::main()
}
