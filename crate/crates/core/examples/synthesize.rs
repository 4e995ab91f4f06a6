// Synthesis of a multisequence whose R-extension has maximum dimension,
// once from a replayable choice script and once from a seed.

use rext::{synthesize, ChoiceScript, Choices, PolyLadder, PrimeField, RVector, SynthesisConfig};

pub fn run() -> rext::Result<()> {
    let f2 = PrimeField::new(2)?;
    let ladder = PolyLadder::default_for(f2, 3, 6)?;
    let script: ChoiceScript = serde_json::from_str(include_str!("../data/gf2_m3_b2_choices.json"))
        .map_err(|e| rext::Error::Parse(e.to_string()))?;
    let r: RVector = "2,2,2".parse()?;

    let syn = synthesize(SynthesisConfig {
        r: &r,
        n: 6,
        ladder: &ladder,
        choices: Choices::Script(script),
        verify_steps: true,
    })?;
    for step in &syn.steps {
        println!(
            "at {} active {}: f = {}, appended {:?}, next extension dimension {:?}",
            step.point, step.active, step.f, step.appended, step.extension_dimension
        );
    }
    println!("M_W:\n{}", syn.state.state());

    let f3 = PrimeField::new(3)?;
    let ladder3 = PolyLadder::default_for(f3, 1, 8)?;
    let r3: RVector = "1,3,2".parse()?;
    let seeded = synthesize(SynthesisConfig {
        r: &r3,
        n: 8,
        ladder: &ladder3,
        choices: Choices::Seeded(42),
        verify_steps: false,
    })?;
    println!(
        "seed 42 over F_3, R = {r3}, n = 8: extension dimension {} with minimal polynomial {}",
        seeded.state.extension_dimension(&r3)?,
        seeded.state.minpoly()
    );
    Ok(())
}

fn main() -> rext::Result<()> {
    run()
}
