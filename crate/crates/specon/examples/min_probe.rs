use specon::search::{minimize_h, SearchConfig};

fn main() {
    for (n, restarts) in [(2usize, 48u32), (3, 48), (4, 48)] {
        for seed in [1u64, 7, 42] {
            let mut cfg = SearchConfig::new(n);
            cfg.restarts = restarts;
            cfg.rng_seed = seed;
            let r = minimize_h(&cfg).unwrap();
            let ni = r.restarts.iter().filter(|o| o.interior && o.converged).count();
            print!("n={n} seed={seed}: best h={:.3e} | interior-converged: {ni}", r.best.h_value);
            if let Some(bi) = &r.best_interior {
                print!("  best_int h={:.6} T={:.3}", bi.h_value, bi.gaps.iter().step_by(2).sum::<f64>());
            }
            println!();
        }
    }
}
