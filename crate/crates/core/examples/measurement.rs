//! Successive measurements of two observables: a state lies in the range
//! of the truth value of X <= Y exactly when the corresponding ordered
//! measurement gives X <= Y with probability one.

use qsets::hilbert::random::rng;
use qsets::hilbert::{Observable, StateVector, C64, CMat};
use qsets::measurement::{random_states, range_states, OrderPair};
use qsets::reals::SnapConfig;
use qsets::Kind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = Observable::diagonal(&[0.0, 1.0]);
    let flip = CMat::from_fn(2, 2, |i, j| C64::new(if i == j { 0.0 } else { 1.0 }, 0.0));
    let y = Observable::new(flip, 1e-9)?;
    let pair = OrderPair::new(&x, &y, &SnapConfig::default())?;

    let plus = StateVector::normalized(qsets::hilbert::CVec::from_element(2, C64::new(1.0, 0.0)))?;
    for k in [Kind::S, Kind::C, Kind::R] {
        let v = pair.check(k, &plus, 1e-7)?;
        println!(
            "{}: |+> in range {}, P(Y then X) = {:.3}, P(X then Y) = {:.3}, agrees {}",
            k.label(),
            v.membership,
            v.p_yx,
            v.p_xy,
            v.verdict
        );
    }

    let mut r = rng(7);
    for k in [Kind::S, Kind::C, Kind::R] {
        let s = random_states(&pair, k, 1000, 1e-7, 7, &mut r)?;
        let (inside, outside) = range_states(pair.truth(k), &mut r);
        let extra: Vec<bool> = inside.iter().chain(&outside).map(|psi| pair.check(k, psi, 1e-7).map(|v| v.verdict)).collect::<Result<_, _>>()?;
        println!("{}: held in {}/{} random states; constructed states agree: {:?}", k.label(), s.held, s.total, extra);
    }
    Ok(())
}
