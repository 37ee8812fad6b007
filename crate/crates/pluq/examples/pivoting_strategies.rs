//! Sweeps every pivot-search order and permutation kind over random
//! matrices with planted rank profiles, and tabulates which combinations
//! reveal the row profile, the column profile, or the full rank profile
//! matrix.

use pluq::field::PrimeField;
use pluq::matrix::DenseMatrix;
use pluq::oracle;
use pluq::pivoting::{iterative_pluq, reveal_claim, PivotingStrategy};
use rand::SeedableRng;

fn check(
    f: &PrimeField,
    a: &DenseMatrix,
    planted: &pluq::perm::SubPermutationMatrix,
    s: PivotingStrategy,
) -> (bool, bool, bool) {
    let d = iterative_pluq(f, a, s);
    let pm = d.pivoting_matrix();
    (
        pm.row_support() == planted.row_support(),
        pm.col_support() == planted.col_support(),
        pm == *planted,
    )
}

fn main() {
    let f = PrimeField::new(101).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let instances: Vec<_> = (0..40)
        .map(|_| oracle::random_with_profile(&f, 10, 12, 6, &mut rng).unwrap())
        .collect();

    println!("{:<28} claim      observed on 40 planted instances", "strategy");
    for s in PivotingStrategy::all() {
        let claim = reveal_claim(&s);
        let mut row = true;
        let mut col = true;
        let mut rpm = true;
        for (a, planted) in &instances {
            let (r, c, m) = check(&f, a, planted, s);
            row &= r;
            col &= c;
            rpm &= m;
        }
        let fmt = |b: bool| if b { "yes" } else { " - " };
        let name = format!("{:?},{:?},{:?}", s.search, s.row_perm, s.col_perm);
        println!(
            "{name:<50} {} {} {}    row:{} col:{} full:{}",
            fmt(claim.row_rank_profile),
            fmt(claim.col_rank_profile),
            fmt(claim.rank_profile_matrix),
            fmt(row),
            fmt(col),
            fmt(rpm),
        );
        // claimed profiles must always be observed
        assert!(!claim.row_rank_profile || row);
        assert!(!claim.col_rank_profile || col);
        assert!(!claim.rank_profile_matrix || rpm);
    }
}
