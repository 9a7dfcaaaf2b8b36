//! The free nilpotent group on two generators: Hall basis, collection,
//! Hall polynomials, and the constants bounding `o(ab) / o(a, b)`.

mod basis;
mod collector;
mod constants;
mod eval;
mod magnus;
mod polynomial;

pub use basis::{formal_commutator_count, formal_commutators, hall_basis, render, BasicCommutator, FormalCommutator, Structure, MAX_GAMMA};
pub use collector::{FreeNilpotent, Letter, NormalWord};
pub use constants::{class_constants, factored_constants, primes_bounded, verify_constants, ClassConstants, Factored};
pub use eval::{center_power_check, evaluate_basis, evaluate_word, hall_formula_check, CenterPower};
pub use magnus::{Magnus, Series};
pub use polynomial::{check_hall_formula, divisibility_check, hall_polynomials, BinomialPolynomial, HallPolynomial};
