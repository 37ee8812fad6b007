//! Computes the rank profile matrix of a small singular matrix and reads
//! the row and column rank profiles off its supports.

use pluq::blocked::crout_pluq;
use pluq::field::PrimeField;
use pluq::matrix::DenseMatrix;
use pluq::oracle;

fn main() {
    let f = PrimeField::new(7).unwrap();
    let a = DenseMatrix::from_rows(&[
        vec![2, 0, 3, 0],
        vec![1, 0, 0, 0],
        vec![0, 0, 4, 0],
        vec![0, 2, 0, 1],
    ]);

    // Brute force: build the profile row by row from leading-submatrix ranks.
    let slow = oracle::rpm_oracle(&f, &a);
    // Fast: a Crout elimination with lexicographic search and rotations.
    let fast = crout_pluq(&f, &a);

    assert_eq!(slow, fast.pivoting_matrix());
    println!("rank {}", fast.rank());
    for (i, j) in fast.pivoting_matrix().pivots() {
        println!("pivot at row {}, column {}", i + 1, j + 1);
    }
    // The supports of the rank profile matrix are exactly the row and
    // column rank profiles.
    println!("row profile    {:?}", slow.row_support());
    println!("column profile {:?}", slow.col_support());
    assert_eq!(slow.row_support(), oracle::row_rank_profile(&f, &a));
    assert_eq!(slow.col_support(), oracle::col_rank_profile(&f, &a));

    // Every leading submatrix of the profile has the same rank as the
    // corresponding leading submatrix of A — that is its defining property.
    for i in 0..=a.rows() {
        for j in 0..=a.cols() {
            let lead = a.extract(pluq::matrix::Rect::new(0, 0, i, j));
            assert_eq!(slow.leading_count(i, j), oracle::rank(&f, &lead));
        }
    }
    println!("all {}x{} leading ranks agree", a.rows() + 1, a.cols() + 1);
}
