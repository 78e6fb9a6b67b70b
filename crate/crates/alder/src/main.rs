fn main() { std::process::exit(alder::cli::dispatch(std::env::args().skip(1))); }
