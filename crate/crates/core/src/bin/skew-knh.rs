fn main() {
    std::process::exit(skew_knh::cli::run(std::env::args_os()));
}
