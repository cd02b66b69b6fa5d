fn main() {
    std::process::exit(forest_ef::cli::run(std::env::args_os()));
}
