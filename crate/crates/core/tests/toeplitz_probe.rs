use attractorlab_core::{Config, GeneratorSpec};
use std::time::Instant;

#[test]
fn gen512() {
    let cfg = Config::default();
    let t = Instant::now();
    let toeplitz = GeneratorSpec::parse("toeplitz:12???")
        .unwrap()
        .generate(512, cfg.max_len)
        .unwrap();
    println!("generated 512 in {:?}", t.elapsed());
    for n in [32usize, 64, 128, 256, 512] {
        let t = Instant::now();
        let s = attractorlab_core::gamma_star_size(&toeplitz.prefix(n), &cfg, None).unwrap();
        println!("toeplitz n={n}: s={s} in {:?}", t.elapsed());
    }
}
