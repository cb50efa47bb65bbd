fn main() {
    std::process::exit(gdcage::run(std::env::args_os()));
}
