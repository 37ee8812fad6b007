//! Derives the LEU, Bruhat, echelon and generalized Bruhat decompositions
//! from a single revealing PLUQ factorization and verifies each
//! recomposition exactly.

use pluq::decomp::{
    bruhat_vpu, echelon_forms, echelon_of_leading_submatrix, generalized_bruhat,
    is_column_echelon, is_lower_triangular, is_row_echelon, is_upper_triangular,
    leu_from_pluq, leu_uniqueness_predicate, xfy_uniqueness_predicate,
};
use pluq::field::PrimeField;
use pluq::oracle;
use pluq::pivoting::{iterative_pluq, PivotingStrategy};
use rand::SeedableRng;

fn main() {
    let f = PrimeField::new(101).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let (a, _) = oracle::random_with_profile(&f, 7, 9, 4, &mut rng).unwrap();

    // Reverse-lexicographic search with row rotations reveals the rank
    // profile matrix AND yields the canonical (unique) L factor.
    let strategy: PivotingStrategy = "revlex,rot,rot".parse().unwrap();
    let d = iterative_pluq(&f, &a, strategy);

    let leu = leu_from_pluq(&d).unwrap();
    assert!(is_lower_triangular(&leu.lbar()));
    assert!(is_upper_triangular(&leu.ubar()));
    assert_eq!(leu.recompose(&f), a);
    assert!(leu_uniqueness_predicate(&d).unwrap());
    println!("LEU: lower * profile * upper, recomposes exactly");

    let vpu = bruhat_vpu(&f, &a);
    assert!(is_upper_triangular(&vpu.v()));
    assert!(is_upper_triangular(&vpu.u()));
    assert_eq!(vpu.recompose(&f), a);
    println!("Bruhat: upper * sub-permutation * upper, recomposes exactly");

    let pair = echelon_forms(&d).unwrap();
    assert!(is_column_echelon(&pair.c));
    assert!(is_row_echelon(&pair.r));
    println!("echelon: rank-{} column and row echelon bases", pair.rank);

    // Echelon forms of every leading submatrix come from the same
    // factorization, with no re-elimination.
    for i in 1..=a.rows() {
        for j in 1..=a.cols() {
            let lead = echelon_of_leading_submatrix(&d, i, j).unwrap();
            assert!(is_column_echelon(&lead.c));
            assert!(is_row_echelon(&lead.r));
        }
    }
    println!("leading-submatrix echelon forms extracted for all (i, j)");

    let xfy = generalized_bruhat(&d).unwrap();
    assert!(is_column_echelon(&xfy.x));
    assert!(is_row_echelon(&xfy.y));
    assert_eq!(xfy.recompose(&f), a);
    assert!(xfy_uniqueness_predicate(&xfy));
    println!("generalized Bruhat: echelon * permutation * echelon, canonical");
}
