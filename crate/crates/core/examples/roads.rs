// The R-road and its backward traversal.

use rext::{backward_traverse, phi, road, RVector};

pub fn run() -> rext::Result<()> {
    let r: RVector = "3,2,5,4,1".parse()?;
    println!("phi{r} = {}", phi(&r)?);
    let path: Vec<String> = road(&r).iter().map(ToString::to_string).collect();
    println!("road: {}", path.join(" "));
    for (g, c) in backward_traverse(&r) {
        println!("  at {g} increment coordinate {c}");
    }
    Ok(())
}

fn main() -> rext::Result<()> {
    run()
}
