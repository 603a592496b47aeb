//! Exact ground states: column transfer-matrix DP cross-checked by enumeration.
use spinanneal::chimera::{build_chimera, ChimeraSpec};
use spinanneal::{brute_force_ground, chimera_dp_ground, energy, gen_instance};

fn main() -> spinanneal::Result<()> {
    let small = ChimeraSpec::new(2, 2, 3);
    for seed in 0..5 {
        let inst = gen_instance(&build_chimera(&small)?, seed);
        let dp = chimera_dp_ground(&inst, &small)?;
        let bf = brute_force_ground(&inst)?;
        println!("C(2,2,3) seed {seed}: dp {} brute {}", dp.energy, bf.energy);
    }

    // 128 spins is far beyond enumeration, the DP handles it in milliseconds
    let big = ChimeraSpec::new(4, 4, 4);
    let inst = gen_instance(&build_chimera(&big)?, 1);
    let g = chimera_dp_ground(&inst, &big)?;
    assert_eq!(energy(&inst, &g.witness)?, g.energy);
    println!("C(4,4,4) seed 1: ground energy {}", g.energy);
    Ok(())
}
