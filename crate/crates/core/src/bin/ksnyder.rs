fn main() {
    std::process::exit(kappa_snyder::cli::run_cli(std::env::args_os()));
}
