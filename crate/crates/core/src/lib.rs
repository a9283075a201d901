pub mod apoly;
pub mod charvariety;
pub mod chebyshev;
pub mod elimination;
pub mod polycore;
pub mod sl2;
pub mod selftest;
