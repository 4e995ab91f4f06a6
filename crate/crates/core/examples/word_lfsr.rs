// Feedback blocks of a word LFSR with 3-bit words and 2 delay blocks for the
// characteristic polynomial s^6 + s + 1, then a run of its output.

use rext::lfsr::period;
use rext::{
    feedback_blocks, lfsr_state_of, synthesize, transition_from_multiseq, verify_lfsr,
    ChoiceScript, Choices, PolyLadder, PrimeField, RVector, SynthesisConfig,
};

pub fn run() -> rext::Result<()> {
    let f2 = PrimeField::new(2)?;
    let ladder = PolyLadder::default_for(f2, 3, 6)?;
    let script: ChoiceScript = serde_json::from_str(include_str!("../data/gf2_m3_b2_choices.json"))
        .map_err(|e| rext::Error::Parse(e.to_string()))?;
    let r = RVector::new(vec![2, 2, 2])?;
    let syn = synthesize(SynthesisConfig {
        r: &r,
        n: 6,
        ladder: &ladder,
        choices: Choices::Script(script),
        verify_steps: false,
    })?;

    let a = transition_from_multiseq(&syn.state)?;
    println!("m-companion transition:\n{}", a.mat());
    let spec = feedback_blocks(&a)?;
    for (i, b) in spec.blocks().iter().enumerate() {
        println!("B_{i}:\n{b}");
    }

    let report = verify_lfsr(&spec, syn.state.minpoly());
    println!("verification passed: {}", report.passed());

    let start = lfsr_state_of(&syn.state, 2)?;
    let words = spec.words(&start, 10)?;
    assert_eq!(words, syn.state.words(10));
    println!("output words: {words:?}");
    println!(
        "period from the synthesized state: {}",
        period(&spec, &start)?
    );
    Ok(())
}

fn main() -> rext::Result<()> {
    run()
}
