//! Six-element subsets of S_3 and S_4 satisfying the permutation condition.

use sparsest::gin::s3_lemma_search;
use sparsest::Result;

fn main() -> Result<()> {
    for n in [3, 4] {
        let found = s3_lemma_search(n)?;
        println!("S_{n}: {} subsets", found.len());
        for s in &found {
            println!("  {:?}", s.perms);
        }
    }
    Ok(())
}
