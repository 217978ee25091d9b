fn main() {
    std::process::exit(dyck_shift::cli::run(std::env::args_os()));
}
