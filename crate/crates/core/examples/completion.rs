//! Completing block-diagonal data to a low-rank matrix.

use rand::Rng;
use sparsest::field::{Field, PrimeField};
use sparsest::linalg::rank;
use sparsest::sampler::{complete_block_diagonal, diagonal_block, random_rank_matrix, seeded_rng};
use sparsest::Result;

fn main() -> Result<()> {
    let f = PrimeField::new(32003)?;
    let mut rng = seeded_rng(1, 0);
    let sizes = [2, 3];
    let r = 2;
    let blocks = sizes
        .iter()
        .map(|&s| random_rank_matrix(&f, s, s, rng.random_range(1..=r), &mut rng))
        .collect::<Result<Vec<_>>>()?;
    let a = complete_block_diagonal(&f, &blocks, r)?;
    for i in 0..a.rows() {
        println!("{}", a.row(i).iter().map(|e| format!("{:>7}", f.format_elem(e))).collect::<String>());
    }
    println!("rank {} <= {r}", rank(&f, &a));
    for (k, b) in blocks.iter().enumerate() {
        assert_eq!(diagonal_block(&a, &sizes, k), *b);
    }
    Ok(())
}
