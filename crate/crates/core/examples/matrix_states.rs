// Matrix states of a multisequence, shifting, dimension and R-extensions.

use rext::{minimal_poly_oracle, Mat, MultiseqState, Poly, PrimeField, RVector};

pub fn run() -> rext::Result<()> {
    let f = PrimeField::new(2)?;
    let p = Poly::parse(f, "s^6+s+1")?;
    let m = Mat::from_rows(
        f,
        &[[0, 0, 0, 0, 0, 1], [0, 1, 0, 1, 1, 0], [0, 0, 0, 1, 1, 1]],
    )?;
    let s = MultiseqState::new(m, p)?;

    println!("M(0):\n{}", s.state());
    println!("M(1):\n{}", s.step(1).state());
    println!("period {}, dimension {}", s.period(), s.dimension());

    let words = s.words(8);
    println!("first words W(0..8): {words:?}");

    let r: RVector = "2,2,2".parse()?;
    println!("{r}-extension state:\n{}", s.extension_state(&r)?);
    println!("extension dimension {}", s.extension_dimension(&r)?);

    let samples = s.component_samples(2, 12);
    println!(
        "component 2 minimal polynomial: {}",
        minimal_poly_oracle(f, &samples)?
    );

    let canon = s.step(17).canonical()?;
    assert_eq!(canon, s.canonical()?);
    println!("canonical representative of the orbit:\n{}", canon.state());
    Ok(())
}

fn main() -> rext::Result<()> {
    run()
}
