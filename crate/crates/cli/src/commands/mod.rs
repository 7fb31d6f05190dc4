pub mod fock;
pub mod order;
pub mod spin;
