fn main() {
    std::process::exit(rpi_meter::cli::run());
}
