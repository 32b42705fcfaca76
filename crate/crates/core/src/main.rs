fn main() -> std::process::ExitCode {
    opcert::cli::main_entry()
}
