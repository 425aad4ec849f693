//! Spin-½ builtins on ℂ²: the Pauli-axis projectors and eigenstates.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::hilbert::{ComplexMatrix, Projector, StateVector, C64};
use crate::logic::Binding;
use crate::{Error, Result, Settings};

/// Builtin names, in the order they are listed to users.
pub const BUILTIN_NAMES: [&str; 6] = ["z+", "z-", "x+", "x-", "y+", "y-"];

/// Projector matrix for a builtin name such as `"x-"`; names are case-insensitive.
pub fn builtin_matrix(name: &str) -> Option<ComplexMatrix> {
    let r = |x: f64| C64::new(x, 0.0);
    let i = |x: f64| C64::new(0.0, x);
    let entries = match name.to_ascii_lowercase().as_str() {
        "z+" => [r(1.0), r(0.0), r(0.0), r(0.0)],
        "z-" => [r(0.0), r(0.0), r(0.0), r(1.0)],
        "x+" => [r(0.5), r(0.5), r(0.5), r(0.5)],
        "x-" => [r(0.5), r(-0.5), r(-0.5), r(0.5)],
        "y+" => [r(0.5), i(-0.5), i(0.5), r(0.5)],
        "y-" => [r(0.5), i(0.5), i(-0.5), r(0.5)],
        _ => return None,
    };
    Some(ComplexMatrix::new(2, entries.to_vec()).expect("2×2 builtin"))
}

pub fn builtin_projector(name: &str) -> Result<Projector> {
    let m = builtin_matrix(name).ok_or_else(|| Error::UnknownBuiltin(name.to_owned()))?;
    Projector::validate(m, &Settings::default())
}

/// Normalized eigenstate spanning the range of the same-named projector.
pub fn builtin_state(name: &str) -> Result<StateVector> {
    let h = FRAC_1_SQRT_2;
    let amps = match name.to_ascii_lowercase().as_str() {
        "z+" => [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        "z-" => [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        "x+" => [C64::new(h, 0.0), C64::new(h, 0.0)],
        "x-" => [C64::new(h, 0.0), C64::new(-h, 0.0)],
        "y+" => [C64::new(h, 0.0), C64::new(0.0, h)],
        "y-" => [C64::new(h, 0.0), C64::new(0.0, -h)],
        _ => return Err(Error::UnknownBuiltin(name.to_owned())),
    };
    StateVector::new(amps.to_vec(), &Settings::default())
}

/// Binding of the atoms `Z+ Z- X+ X- Y+ Y-` to the builtin projectors.
pub fn spin_binding() -> Binding {
    let mut b = Binding::new(2);
    for name in BUILTIN_NAMES {
        b.insert(name.to_ascii_uppercase(), builtin_projector(name).expect("builtin"))
            .expect("dimension 2");
    }
    b
}
