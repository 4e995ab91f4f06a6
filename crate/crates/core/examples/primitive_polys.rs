// Primitive polynomial search and the companion matrix of the result.
//
// ```text
// cargo run --example primitive_polys
// ```

use rext::{find_primitive, primitive_polys, Mat, Poly, PrimeField};

pub fn run() -> rext::Result<()> {
    let f2 = PrimeField::new(2)?;
    for n in 3..=8 {
        let p = find_primitive(f2, n)?;
        println!("first primitive of degree {n} over F_2: {p}");
    }
    let count = primitive_polys(f2, 6)?.count();
    println!("degree 6 has {count} primitive polynomials");

    let f3 = PrimeField::new(3)?;
    let p = Poly::parse(f3, "s^3+2*s+1")?;
    println!(
        "{p}: irreducible {}, order {}",
        p.is_irreducible(),
        p.order()?
    );

    let a = Mat::companion(&find_primitive(f2, 4)?)?;
    println!("companion of s^4+s+1 (x -> xA):\n{a}");
    assert_eq!(a.charpoly()?, find_primitive(f2, 4)?);
    Ok(())
}

fn main() -> rext::Result<()> {
    run()
}
