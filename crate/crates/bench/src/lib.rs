//! Inputs shared by the benchmarks.

use cuboid_core::elimination::SylvesterMatrix;
use cuboid_core::pipeline::{default_golden_dir, Config, GoldenData, Pipeline};
use cuboid_core::{Int, MPoly};

/// Golden data and a pipeline over it, with no cache.
pub fn pipeline() -> Pipeline {
    let golden = GoldenData::load(&default_golden_dir()).expect("golden data loads");
    Pipeline::new(golden, Config::default())
}

/// The 31x31 Sylvester matrix of `f` and `df/dy` at `s = point`.
pub fn discriminant_matrix(f: &MPoly, point: i64) -> Vec<Vec<Int>> {
    let i = f.var_index("y").expect("f is in y");
    let df = MPoly::from_terms(
        f.vars(),
        f.terms().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut e = e.clone();
            let k = e[i];
            e[i] -= 1;
            (e, c * &Int::from(k))
        }),
    )
    .expect("same variables");
    SylvesterMatrix::new(f, &df, "y")
        .expect("f has positive degree in y")
        .specialize(&[Int::from(point)])
}
