fn main() {
    std::process::exit(uavcov::cli::run());
}
