fn main() {
    std::process::exit(tempomatch::cli::run());
}
