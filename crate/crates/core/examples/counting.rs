// Closed-form counts next to their brute-force oracles.

use rext::{
    count_by_dimension, count_lfsr, count_max_extension, count_nr, find_primitive,
    grassmannian_size, oracle_by_dimension, oracle_lfsr, oracle_max_extension, oracle_nr,
    PrimeField, RVector,
};

pub fn run() -> rext::Result<()> {
    let f2 = PrimeField::new(2)?;
    println!("2-dim subspaces of F_2^4: {}", grassmannian_size(2, 4, 2)?);

    for l in 1..=2 {
        println!(
            "dimension {l}, m = 2, n = 3: formula {} oracle {}",
            count_by_dimension(l, 2, 3, 2)?,
            oracle_by_dimension(l, 2, 3, f2, 0)?
        );
    }

    let r: RVector = "2,1".parse()?;
    let p3 = find_primitive(f2, 3)?;
    println!(
        "R = {r}, n = 3: formula {} oracle {}",
        count_max_extension(&r, 3, 2)?,
        oracle_max_extension(&r, &p3, 0)?
    );

    let p5 = find_primitive(f2, 5)?;
    println!(
        "all R with m = 2, r = 4, n = 5: formula {} oracle {}",
        count_nr(2, 4, 5, 2)?,
        oracle_nr(2, 4, &p5, 0)?
    );

    let p4 = find_primitive(f2, 4)?;
    println!(
        "LFSRs m = 2, b = 2 for {p4}: formula {} oracle {}",
        count_lfsr(2, 2, 2)?,
        oracle_lfsr(2, 2, &p4, 0)?
    );
    println!("LFSRs m = 8, b = 16 over F_2: {}", count_lfsr(8, 16, 2)?);
    Ok(())
}

fn main() -> rext::Result<()> {
    run()
}
