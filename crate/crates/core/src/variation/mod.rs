//! First and second variations along curves of metrics, volume forms and complex structures.

pub mod catalog;
pub mod curves;
pub mod fd;
