pub mod dec;
pub mod field;
pub mod london;
pub mod regime;
pub mod ring;
pub mod runner;
pub mod scenario;
