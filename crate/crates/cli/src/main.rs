use clap::Parser;

fn main() {
    env_logger::init();
    std::process::exit(layercraft_cli::main_with(layercraft_cli::Cli::parse()));
}
