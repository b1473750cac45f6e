pub mod graph;
pub mod poly;
pub mod chromatic;
pub mod gentri;
pub mod classes;
pub mod verify;
