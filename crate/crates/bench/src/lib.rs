//! Shared fixtures for the criterion benches.

use std::sync::Arc;

use hbch::quantum::PipelineConfig;
use hbch::{CosetSystem, DefiningSet, FieldTower, PointSet};

/// Tower, homothetic points and defining set of the binary length-186 code.
pub fn binary_homothetic() -> (Arc<FieldTower>, PointSet, DefiningSet) {
    let tower = Arc::new(FieldTower::new(2, 5).expect("bundled table covers GF(2^10)"));
    let points = PointSet::homothetic(tower.clone(), 93, 2).expect("93 divides 1023");
    let system = Arc::new(CosetSystem::new(1023, 2).expect("1023 is odd"));
    let delta = DefiningSet::from_representatives(system, &[1, 2, 3, 5, 6, 7], false).expect("representatives");
    (tower, points, delta)
}

pub fn bch_91() -> PipelineConfig {
    PipelineConfig::tau(8, 2, 91, 1, 9, false)
}
