pub mod graph;
pub mod canon;
pub mod cage;
pub mod middle;
pub mod search;
pub mod geometry;
