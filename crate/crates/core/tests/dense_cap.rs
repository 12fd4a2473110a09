//! The dense cap is process-wide, so it gets its own test binary.

use haarmoments::combinatorics::Partition;
use haarmoments::weingarten::{
    central_projector, dense_cap, set_dense_cap, vec_moment, ExactOperator, DEFAULT_DENSE_CAP, MIN_DENSE_CAP,
};
use haarmoments::Error;

#[test]
fn cap_can_be_lowered_and_raised() {
    assert_eq!(dense_cap(), DEFAULT_DENSE_CAP);
    assert!(ExactOperator::zeros(2, 6).is_ok());
    assert!(matches!(ExactOperator::zeros(2, 13), Err(Error::ResourceLimit { .. })));

    set_dense_cap(MIN_DENSE_CAP).unwrap();
    assert!(ExactOperator::zeros(2, 4).is_ok());
    assert!(matches!(ExactOperator::zeros(2, 5), Err(Error::ResourceLimit { .. })));
    assert!(matches!(central_projector(&Partition::row(3), 3), Err(Error::ResourceLimit { .. })));
    assert!(vec_moment(2, 2).is_ok());
    assert!(matches!(vec_moment(3, 2), Err(Error::ResourceLimit { .. })));
    assert!(set_dense_cap(MIN_DENSE_CAP - 1).is_err());
    assert_eq!(dense_cap(), MIN_DENSE_CAP);

    set_dense_cap(2 * MIN_DENSE_CAP).unwrap();
    assert!(ExactOperator::zeros(2, 5).is_ok());
    set_dense_cap(DEFAULT_DENSE_CAP).unwrap();
}
