pub mod natpoly;
