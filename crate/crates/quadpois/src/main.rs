fn main() {
    eprintln!("quadpois: command-line interface not yet wired");
    std::process::exit(2);
}
