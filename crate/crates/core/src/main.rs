fn main() {
    std::process::exit(series_bounds::cli::main_entry());
}
