use attractorlab_core::{Analysis, Config, GeneratorSpec};

fn main() {
    let cfg = Config::default();
    let w = GeneratorSpec::parse("toeplitz:12???")
        .unwrap()
        .generate(512, cfg.max_len)
        .unwrap();
    for n in [320usize, 384, 448, 512] {
        eprintln!("n={n}:");
        Analysis::new(&w.prefix(n)).unwrap().trace_gamma();
    }
}
