//! Marked bases over quasi-stable monomial modules.

pub mod cli;
pub mod family;
pub mod marked;
pub mod monom;
pub mod ring;
pub mod syzygy;
