use std::time::Instant;

use ncg_core::calculus::{d1, FormOracle, OneForm};
use ncg_core::linalg::DEFAULT_TOL;

fn main() {
    for n in 0..=2 {
        let t = ncg_core::build_triple(n);
        let start = Instant::now();
        let o = FormOracle::new(&t, 2, DEFAULT_TOL).expect("within cap");
        let built = start.elapsed();
        let mut gap: f64 = 0.0;
        for m in 0..3 {
            let e = OneForm::basis(t.dim_k, m);
            match o.d(&t, &e) {
                Ok(w) => gap = gap.max(w.max_abs_diff(&d1(&t, &e))),
                Err(err) => println!("N={n}: d e_{} unavailable: {err}", m + 1),
            }
        }
        println!(
            "N={n}: span {} junk {} ident {:.2e} d-gap {:.2e} build {:?} total {:?}",
            o.one_form_dim(),
            o.junk_dim(),
            o.identification_residual(),
            gap,
            built,
            start.elapsed()
        );
    }
}
