//! Rank notions over small residue rings with zero divisors, by exhaustive
//! enumeration: where the rank profile matrix survives (local rings), and
//! where it breaks down (the spanning rank everywhere, every rank notion
//! over square-free composite moduli).

use pluq::ring::{
    mccoy_rank, mccoy_rank_via_nullspace, mccoy_rpm, spanning_delta_counterexample,
    spanning_rank, unit_minor_rank, verify_cex_lemma, verify_delta_lemma, RingMatrix,
    SmallRing,
};
use rand::SeedableRng;

fn main() {
    // Over Z/4Z the matrix [[0,2],[2,1]] has spanning rank 1, but so does
    // its 1x2, 2x1 leading blocks — no sparse matrix can reproduce that
    // leading-rank table, so the spanning rank admits no profile matrix.
    let z4 = SmallRing::new(4).unwrap();
    let a = RingMatrix::from_rows(&z4, &[vec![0, 2], vec![2, 1]]);
    println!(
        "spanning ranks of [[0,2],[2,1]] over Z/4: 1x1={} 1x2={} 2x1={} 2x2={}",
        spanning_rank(&z4, &a.leading(1, 1)).unwrap(),
        spanning_rank(&z4, &a.leading(1, 2)).unwrap(),
        spanning_rank(&z4, &a.leading(2, 1)).unwrap(),
        spanning_rank(&z4, &a).unwrap(),
    );
    assert!(verify_cex_lemma().unwrap());
    println!("no sub-permutation matrix matches -> spanning rank disqualified");
    println!(
        "spanning-rank bordered discrepancies {:?} also break the 0/1 clauses",
        spanning_delta_counterexample().unwrap()
    );

    // McCoy's rank fixes this: the same matrix gets the leading table
    // (0,0,0,1) and the profile matrix [[0,0],[0,1]].
    let rpm = mccoy_rpm(&z4, &a).unwrap();
    println!("McCoy rank profile pivots over Z/4: {:?}", rpm.pivots());

    // Over local rings (prime-power moduli) the three readings of McCoy's
    // rank coincide and the bordered-rank clauses hold...
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for modulus in [4u64, 8, 9] {
        assert!(verify_delta_lemma(modulus, 0, &mut rng).unwrap());
        println!("modulus {modulus}: discrepancy clauses hold exhaustively");
    }

    // ...but over Z/6Z they diverge pairwise, the clauses fail, and the
    // rank profile matrix itself can fail to exist.
    let z6 = SmallRing::new(6).unwrap();
    let col = RingMatrix::from_rows(&z6, &[vec![2], vec![3]]);
    println!(
        "column [2;3] over Z/6: annihilator rank {}, nullspace rank {}, unit-minor rank {}",
        mccoy_rank(&z6, &col).unwrap(),
        mccoy_rank_via_nullspace(&z6, &col).unwrap(),
        unit_minor_rank(&z6, &col).unwrap(),
    );
    assert!(!verify_delta_lemma(6, 0, &mut rng).unwrap());
    println!("modulus 6: discrepancy clauses VIOLATED (e.g. bordering [2] by 1,1,2)");
    let bad = RingMatrix::from_rows(&z6, &[vec![2, 1], vec![1, 2]]);
    assert!(mccoy_rpm(&z6, &bad).is_err());
    println!("[[2,1],[1,2]] over Z/6 has no rank profile matrix at all");
}
