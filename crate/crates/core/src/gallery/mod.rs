//! Constructors for concrete coalgebras.

pub mod coopposite;
pub mod drinfeld;
pub mod goncharov;
pub mod incidence;
pub mod monoid;
pub mod path;
pub mod setlike;
