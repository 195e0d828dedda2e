pub mod hnf;
pub mod numeric;
