#include <doctest.h>

#include "comdf/errors.hpp"
#include "comdf/model.hpp"
#include "test_support.hpp"

using namespace comdf;
using test::max_abs_diff;

TEST_CASE("constant-velocity preset expands A and Q from T") {
    PlantModel plant = PlantModel::constant_velocity(0.25);
    Matrix A(4, 4);
    A << 1, 0, 0.25, 0,
         0, 1, 0, 0.25,
         0, 0, 1, 0,
         0, 0, 0, 1;
    CHECK(max_abs_diff(plant.A, A) == 0.0);
    const double T = 0.25;
    Matrix qbar(2, 2);
    qbar << T * T * T / 3, T * T / 2, T * T / 2, T;
    CHECK(max_abs_diff(plant.Q.topLeftCorner(2, 2), qbar) == 0.0);
    CHECK(max_abs_diff(plant.Q.topRightCorner(2, 2), Matrix(0.5 * qbar)) == 0.0);
    CHECK(max_abs_diff(plant.Q.bottomRightCorner(2, 2), qbar) == 0.0);
    plant.validate();
}

TEST_CASE("plant validation rejects indefinite Q and shape mismatches") {
    PlantModel bad{Matrix::Identity(2, 2), Matrix::Identity(3, 3)};
    CHECK_THROWS_AS(bad.validate(), Error);
    Matrix indefinite = Matrix::Identity(2, 2);
    indefinite(1, 1) = -1.0;
    PlantModel neg{Matrix::Identity(2, 2), indefinite};
    CHECK_THROWS_AS(neg.validate(), Error);
}

TEST_CASE("augment: single sensor, two scalar sensors, tracking suite") {
    Sensor one{Matrix::Ones(1, 2), Matrix::Identity(1, 1)};
    Augmented single = augment(SensorSuite({one}));
    CHECK(max_abs_diff(single.C, one.C) == 0.0);
    CHECK(max_abs_diff(single.R, one.R) == 0.0);

    Sensor scalar{Matrix::Ones(1, 1), Matrix::Identity(1, 1)};
    Augmented two = augment(SensorSuite({scalar, scalar}));
    CHECK(max_abs_diff(two.C, Matrix::Ones(2, 1)) == 0.0);
    CHECK(max_abs_diff(two.R, Matrix::Identity(2, 2)) == 0.0);

    // Position sensors 1, 2, 4 and velocity sensors 3, 5: C is 10x4 and
    // R = diag(1,1,1,1,5,5,1,1,5,5).
    ScenarioConfig cfg = test::tracking_scenario();
    SensorSuite suite(cfg.sensors);
    Augmented aug = augment(suite);
    CHECK(aug.C.rows() == 10);
    CHECK(aug.C.cols() == 4);
    Vector rdiag(10);
    rdiag << 1, 1, 1, 1, 5, 5, 1, 1, 5, 5;
    CHECK(max_abs_diff(aug.R, Matrix(rdiag.asDiagonal())) == 0.0);
    CHECK(max_abs_diff(aug.C.middleRows(0, 2), position_observation_matrix()) == 0.0);
    CHECK(max_abs_diff(aug.C.middleRows(4, 2), velocity_observation_matrix()) == 0.0);
}

TEST_CASE("augment then slicing recovers each sensor exactly") {
    ScenarioConfig cfg = test::tracking_scenario();
    SensorSuite suite(cfg.sensors);
    Augmented aug = augment(suite);
    for (int i = 0; i < suite.count(); ++i) {
        const int o = suite.offset(i);
        const int ri = suite.dims()[i];
        CHECK(max_abs_diff(aug.C.middleRows(o, ri), suite.sensor(i).C) == 0.0);
        CHECK(max_abs_diff(aug.R.block(o, o, ri, ri), suite.sensor(i).R) == 0.0);
    }
}

TEST_CASE("suite construction rejects non-PD noise and mixed state dims") {
    Sensor ok{Matrix::Ones(1, 2), Matrix::Identity(1, 1)};
    Sensor psd_only{Matrix::Ones(1, 2), Matrix::Zero(1, 1)};
    CHECK_THROWS_AS(SensorSuite({ok, psd_only}), Error);
    Sensor other_dim{Matrix::Ones(1, 3), Matrix::Identity(1, 1)};
    CHECK_THROWS_AS(SensorSuite({ok, other_dim}), Error);
}

TEST_CASE("observability: identity, unobserved coordinate, velocity-only stack") {
    Matrix A = Matrix::Identity(3, 3);
    CHECK(check_observability(Matrix::Identity(3, 3), A));
    CHECK_FALSE(check_observability(Matrix(Matrix::Identity(2, 2).row(0)),
                                    Matrix::Identity(2, 2)));

    // Velocity sensors alone cannot pin the position of the tracking plant:
    // the stacked 8x4 observability matrix has rank 2 (SVD oracle below).
    PlantModel plant = PlantModel::constant_velocity(0.25);
    Matrix Cv = velocity_observation_matrix();
    Matrix stack(4, 4);
    stack << Cv, Cv;
    CHECK_FALSE(check_observability(stack, plant.A));

    Matrix obs(16, 4);
    Matrix power = Matrix::Identity(4, 4);
    for (int i = 0; i < 4; ++i) {
        obs.middleRows(4 * i, 4) = stack * power;
        power = power * plant.A;
    }
    Eigen::JacobiSVD<Matrix> svd(obs);
    int rank = 0;
    for (int i = 0; i < 4; ++i)
        if (svd.singularValues()(i) > 1e-9 * svd.singularValues()(0)) ++rank;
    CHECK(rank == 2);
}

TEST_CASE("tracking suite is collectively but not locally observable") {
    ScenarioConfig cfg = test::tracking_scenario();
    SensorSuite suite(cfg.sensors);
    Augmented aug = augment(suite);
    CHECK(check_observability(aug.C, cfg.plant.A));
    CHECK(check_observability(position_observation_matrix(), cfg.plant.A));
    CHECK_FALSE(check_observability(velocity_observation_matrix(), cfg.plant.A));
}
