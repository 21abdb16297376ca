fn main() {
    std::process::exit(lamina::cli::main_from_env());
}
