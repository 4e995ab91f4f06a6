// Hankel matrices, the rank test through a two-row extension, and the census.

use rext::{
    count_fullrank_hankel, enumerate_fullrank_hankel, find_primitive, fullrank_via_extension,
    hankel_from_vector, HankelVec, PrimeField,
};

pub fn run() -> rext::Result<()> {
    let f2 = PrimeField::new(2)?;
    let p = find_primitive(f2, 5)?;
    for a in [[0, 1, 0, 1, 1], [1, 1, 1, 1, 1]] {
        let v = HankelVec::new(f2, a.to_vec())?;
        let h = hankel_from_vector(&v);
        println!(
            "a = {a:?}\n{h}rank {}, full rank via extension: {}",
            h.rank(),
            fullrank_via_extension(&v, &p)?
        );
    }
    for (q, n) in [(2, 3), (3, 2), (2, 4)] {
        println!(
            "q = {q}, n = {n}: formula {} enumeration {}",
            count_fullrank_hankel(q, n)?,
            enumerate_fullrank_hankel(q, n, 0)?
        );
    }
    Ok(())
}

fn main() -> rext::Result<()> {
    run()
}
