//! Inputs shared by the benchmarks.

use wittlab_core::{Field, QuadraticForm};

/// Sums of binary forms [1, t^-k] for k = 1..=n over F2((t)).
pub fn wild_sum(n: usize) -> QuadraticForm {
    let f = Field::f2_laurent();
    let src = (1..=n).map(|k| format!("[1, t^-{k} + t]")).collect::<Vec<_>>().join(", ");
    QuadraticForm::parse(&format!("sum({src})"), &f).expect("benchmark literal")
}

/// A form over F2(x)((t)) with a wedge obstruction.
pub fn wedge_form() -> QuadraticForm {
    let f = Field::laurent(wittlab_core::ResidueField::rational(1).expect("F2(x)"));
    QuadraticForm::parse("sum([1, x*t^-2], [t, t^-3], [1+t, x*t^-1])", &f).expect("benchmark literal")
}

/// A diagonal form over Q2.
pub fn dyadic_form() -> QuadraticForm {
    QuadraticForm::parse("<1, 3, 5, 6, 7, 10>", &Field::dyadic()).expect("benchmark literal")
}
