//! Compares modular-reduction counts across elimination schedules. With
//! delayed reduction, a dot product of any length costs roughly one
//! reduction, so schedules that replace eager rank-1 updates with deferred
//! dot products (Crout, left-looking) do dramatically fewer reductions —
//! the reason the Crout base case is fast in practice.

use pluq::blocked::{
    crout_pluq, left_looking_pluq, right_looking_pluq, tile_recursive_pluq, BaseSchedule,
    BlockConfig,
};
use pluq::field::PrimeField;
use pluq::oracle;
use rand::SeedableRng;

fn main() {
    let f = PrimeField::new(8191).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let (n, r) = (256, 128);
    let (a, _) = oracle::random_with_profile(&f, n, n, r, &mut rng).unwrap();
    println!("n = {n}, rank = {r}, p = {}", f.modulus());

    let count = |name: &str, run: &dyn Fn() -> pluq::pluq::PluqDecomposition| {
        f.reset_reductions();
        let d = run();
        println!("{name:<24} {:>12} reductions", f.reductions());
        let reds = f.reductions();
        assert_eq!(d.rank(), r);
        reds
    };

    let crout = count("Crout", &|| crout_pluq(&f, &a));
    let left = count("left-looking", &|| left_looking_pluq(&f, &a));
    let right = count("right-looking", &|| right_looking_pluq(&f, &a));
    assert!(crout < left && left < right);

    for threshold in [16, 64] {
        let cfg = BlockConfig {
            threshold,
            schedule: BaseSchedule::Crout,
            parallel_fg: false,
        };
        count(&format!("tile (threshold {threshold})"), &|| {
            tile_recursive_pluq(&f, &a, &cfg)
        });
    }
}
