//! Order between internal reals of two observables compared with the
//! spectral order, for the S, C and R conditionals.

use qsets::hilbert::random::rng;
use qsets::hilbert::{Observable, ProjectionLattice};
use qsets::reals::{operator_to_internal, spectral_order, spectral_order_pair, truth_le, SnapConfig};
use qsets::{Kind, Logic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lat = ProjectionLattice::new(2);
    let cfg = SnapConfig::default();
    let z = operator_to_internal(&Observable::diagonal(&[0.0, 1.0]), &cfg)?;
    let z1 = operator_to_internal(&Observable::diagonal(&[1.0, 2.0]), &cfg)?;
    for k in [Kind::S, Kind::C, Kind::R] {
        println!("{}: [Z <= Z + 1] = I: {}, [Z + 1 <= Z] rank {}", k.label(), lat.is_one(&truth_le(&lat, &z, &z1, k)), truth_le(&lat, &z1, &z, k).rank());
    }

    let mut r = rng(9);
    let (x, y) = spectral_order_pair(3, &mut r);
    let lat = ProjectionLattice::new(3);
    let (u, v) = (operator_to_internal(&x, &cfg)?, operator_to_internal(&y, &cfg)?);
    println!("spectral order X <= Y: {}", spectral_order(&lat, &u, &v));
    for k in [Kind::S, Kind::C, Kind::R] {
        println!("{}: [X <= Y] = I: {}", k.label(), lat.is_one(&truth_le(&lat, &u, &v, k)));
    }
    Ok(())
}
