fn main() { std::process::exit(surfcurve::cli::main()) }
