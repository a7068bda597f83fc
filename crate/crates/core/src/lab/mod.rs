pub mod krengel;
pub mod order2;
pub mod rokhlin_report;
pub mod scan;
pub mod unipotent_search;

pub use krengel::{character_sum, krengel_orthogonal, KrengelCertificate};
pub use order2::{order2_counterexample, Order2Counterexample};
pub use rokhlin_report::{rokhlin_report, RokhlinReport, RokhlinRow, Trend};
pub use scan::{
    cesaro_scan, conjecture_scan, negate_set, CesaroReport, CesaroRow, LimitClass, PairClass,
    ScanReport, ScanRow,
};
pub use unipotent_search::{find_unipotent, word_to_string, Letter, UnipotentSearch};
