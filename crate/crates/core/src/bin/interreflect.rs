fn main() {
    std::process::exit(interreflect::cli::run(std::env::args_os()));
}
