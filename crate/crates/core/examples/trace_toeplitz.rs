use attractorlab_core::{Analysis, Config, GeneratorSpec};

fn main() {
    let cfg = Config::default();
    let w = GeneratorSpec::parse("toeplitz:12???")
        .unwrap()
        .generate(512, cfg.max_len)
        .unwrap();
    eprintln!("n=256:");
    Analysis::new(&w.prefix(256)).unwrap().trace_gamma();
}
