fn main() { std::process::exit(parity_core::cli::main()) }
