//! Projections of a finite-dimensional Hilbert space as a logic: meets,
//! commutators and conditionals compared with their kernel forms.

use qsets::connectives::conditional;
use qsets::hilbert::random::{random_projection, rng};
use qsets::hilbert::ProjectionLattice;
use qsets::{commutator_pair, Kind, Logic};

fn main() {
    let mut r = rng(1);
    let dim = 4;
    let l = ProjectionLattice::new(dim);
    let p = random_projection(dim, 2, &mut r);
    let q = random_projection(dim, 2, &mut r);
    println!("rank P = {}, rank Q = {}", p.rank(), q.rank());
    println!("rank P & Q = {}, rank P | Q = {}", l.meet(&p, &q).rank(), l.join(&p, &q).rank());
    println!("rank com(P, Q) = {}", commutator_pair(&l, &p, &q).rank());
    println!("commutator by kernel agrees: {:.2e}", l.commutator_by_kernel(&[p.clone(), q.clone()]).distance(&commutator_pair(&l, &p, &q)));

    for k in [Kind::S, Kind::C, Kind::R] {
        let poly = conditional(&l, k, &p, &q);
        let kern = l.conditional_via_kernel(k, &p, &q).expect("kernel form exists");
        println!("{}: rank P->Q = {}, distance to kernel form {:.2e}", k.label(), poly.rank(), poly.distance(&kern));
    }
}
