#include <doctest.h>

#include <cmath>
#include <numeric>

#include "grpnet/objective.hpp"
#include "problems.hpp"

using namespace grpnet;
using grpnet::testing::random_gaussian;
using grpnet::testing::random_multinomial;

namespace {

DesignMatrix column(std::initializer_list<double> values)
{
    Matrix x(static_cast<Index>(values.size()), 1);
    Index i = 0;
    for (double v : values) x(i++, 0) = v;
    return DesignMatrix(std::move(x));
}

}  // namespace

TEST_CASE("design matrix caches column norms and means")
{
    Rng rng(3);
    const Matrix values = grpnet::testing::normal_matrix(rng, 7, 4);
    const DesignMatrix x(values);
    for (Index k = 0; k < 4; ++k) {
        const double direct = values.col(k).squaredNorm();
        CHECK(std::abs(x.col_sq_norms()[k] - direct) <= 1e-12 * direct);
        CHECK(x.col_means()[k] == doctest::Approx(values.col(k).mean()).epsilon(1e-14));
    }

    Matrix bad = values;
    bad(2, 1) = std::nan("");
    CHECK_THROWS_AS(DesignMatrix{bad}, std::invalid_argument);
    bad(2, 1) = INFINITY;
    CHECK_THROWS_AS(DesignMatrix{bad}, std::invalid_argument);
}

TEST_CASE("multinomial responses must be one-hot")
{
    Matrix y(2, 2);
    y << 1, 0, 0, 1;
    CHECK_NOTHROW(ResponseMatrix(y, Family::Multinomial));
    y(1, 0) = 1;
    CHECK_THROWS_AS(ResponseMatrix(y, Family::Multinomial), std::invalid_argument);
    y << 1, 0, 0.5, 0.5;
    CHECK_THROWS_AS(ResponseMatrix(y, Family::Multinomial), std::invalid_argument);
    CHECK_THROWS_AS(ResponseMatrix::from_labels({1, 3}, 2), std::invalid_argument);

    const auto onehot = ResponseMatrix::from_labels({2, 1, 2}, 2);
    CHECK(onehot.values()(0, 1) == 1.0);
    CHECK(onehot.values()(1, 0) == 1.0);
    CHECK(onehot.values().rowwise().sum().isOnes());
}

TEST_CASE("penalty spec validation")
{
    CHECK_THROWS(PenaltySpec(-1.0, 1.0));
    CHECK_THROWS(PenaltySpec(1.0, 1.5));
    CHECK_THROWS(PenaltySpec(1.0, -0.1));
    CHECK_NOTHROW(PenaltySpec(0.0, 0.0));
}

TEST_CASE("center_columns")
{
    const Matrix ones = Matrix::Ones(3, 1);
    SUBCASE("arithmetic mean")
    {
        const auto c = center_columns(column({1, 2, 3}), ResponseMatrix(ones, Family::Gaussian));
        CHECK(c.x_means[0] == 2.0);
        CHECK(c.x.values()(0, 0) == -1.0);
        CHECK(c.x.values()(1, 0) == 0.0);
        CHECK(c.x.values()(2, 0) == 1.0);
    }
    SUBCASE("already centered column is unchanged")
    {
        const auto c = center_columns(column({-1, 1}), ResponseMatrix(Matrix::Ones(2, 1), Family::Gaussian));
        CHECK(c.x_means[0] == 0.0);
        CHECK(c.x.values()(0, 0) == -1.0);
        CHECK(c.x.values()(1, 0) == 1.0);
    }
    SUBCASE("constant column becomes zero")
    {
        const auto c = center_columns(column({5, 5, 5}), ResponseMatrix(ones, Family::Gaussian));
        CHECK(c.x_means[0] == 5.0);
        CHECK(c.x.values().isZero(0.0));
        CHECK(c.x.col_sq_norms()[0] == 0.0);
    }
    SUBCASE("gaussian responses are centered, multinomial are not")
    {
        Rng rng(11);
        const auto g = random_gaussian(rng, 9, 4, 3);
        const auto cg = center_columns(g.x, g.y);
        CHECK(cg.x.values().colwise().mean().cwiseAbs().maxCoeff() <= 1e-12 * g.x.values().cwiseAbs().maxCoeff());
        CHECK(cg.y.values().colwise().mean().cwiseAbs().maxCoeff() <= 1e-12 * g.y.values().cwiseAbs().maxCoeff());
        CHECK((cg.y_means - g.y.values().colwise().mean().transpose()).norm() <= 1e-14);

        const auto mn = random_multinomial(rng, 9, 4, 3);
        const auto cm = center_columns(mn.x, mn.y);
        CHECK(cm.y.values() == mn.y.values());
        CHECK(cm.y_means.isZero(0.0));
    }
}

TEST_CASE("row_group_norms")
{
    Matrix b(3, 4);
    b << 0, 0, 0, 0, 3, 4, 0, 0, 1, 1, 1, 1;
    const Vector norms = row_group_norms(b);
    CHECK(norms[0] == 0.0);
    CHECK(norms[1] == 5.0);
    CHECK(norms[2] == 2.0);
}

TEST_CASE("penalty_value")
{
    CHECK(penalty_value(CoefficientMatrix::zeros(4, 3), PenaltySpec(3.0, 0.3)) == 0.0);

    Matrix row(1, 2);
    row << 3, 4;
    const CoefficientMatrix b(row, Vector::Zero(2));
    // lambda * alpha * ||row|| = 2 * 5
    CHECK(penalty_value(b, PenaltySpec(2.0, 1.0)) == doctest::Approx(10.0).epsilon(1e-15));
    // 0.5 * 2 * 5 + (0.5 * 2 / 2) * 25
    CHECK(penalty_value(b, PenaltySpec(2.0, 0.5)) == doctest::Approx(5.0 + 12.5).epsilon(1e-15));

    // the intercept carries no penalty
    const CoefficientMatrix with_intercept(row, Vector::Constant(2, 100.0));
    CHECK(penalty_value(with_intercept, PenaltySpec(2.0, 1.0)) == penalty_value(b, PenaltySpec(2.0, 1.0)));
}

TEST_CASE("pure group penalty equals lambda times the sum of row norms")
{
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const CoefficientMatrix b(grpnet::testing::normal_matrix(rng, 6, 3), Vector::Zero(3));
        const double lambda = 0.1 + rng.uniform();
        CHECK(penalty_value(b, PenaltySpec(lambda, 1.0)) == lambda * row_group_norms(b.beta).sum());
    }
}

TEST_CASE("objective_gaussian")
{
    SUBCASE("null model gives half the centered sum of squares")
    {
        Rng rng(21);
        const auto prob = random_gaussian(rng, 12, 5, 3);
        CoefficientMatrix null = CoefficientMatrix::zeros(5, 3);
        null.intercept = prob.y.values().colwise().mean().transpose();
        const Matrix centered = prob.y.values().rowwise() - prob.y.values().colwise().mean();
        CHECK(objective_gaussian(prob.x, prob.y, null, PenaltySpec(1.0, 1.0)) ==
              doctest::Approx(0.5 * centered.squaredNorm()).epsilon(1e-13));
    }
    SUBCASE("perfect fit leaves only the penalty")
    {
        Matrix x(2, 1);
        x << 1, 2;
        Matrix beta(1, 2);
        beta << 3, 4;
        const Matrix y = x * beta;
        const CoefficientMatrix b(beta, Vector::Zero(2));
        CHECK(objective_gaussian(DesignMatrix(x), ResponseMatrix(y, Family::Gaussian), b, PenaltySpec(1.0, 1.0)) ==
              doctest::Approx(5.0));
    }
    SUBCASE("1x1 problem")
    {
        const CoefficientMatrix b(Matrix::Constant(1, 1, 0.5), Vector::Zero(1));
        CHECK(objective_gaussian(DesignMatrix(Matrix::Ones(1, 1)), ResponseMatrix(Matrix::Ones(1, 1), Family::Gaussian),
                                 b, PenaltySpec(0.0, 1.0)) == doctest::Approx(0.125).epsilon(1e-15));
    }
    SUBCASE("dimension mismatch")
    {
        const DesignMatrix x(Matrix::Ones(3, 2));
        const ResponseMatrix y(Matrix::Ones(3, 2), Family::Gaussian);
        CHECK_THROWS_AS(objective_gaussian(x, y, CoefficientMatrix::zeros(3, 2), PenaltySpec()), DimensionError);
        CHECK_THROWS_AS(objective_gaussian(x, y, CoefficientMatrix::zeros(2, 3), PenaltySpec()), DimensionError);
        const ResponseMatrix short_y(Matrix::Ones(2, 2), Family::Gaussian);
        CHECK_THROWS_AS(objective_gaussian(x, short_y, CoefficientMatrix::zeros(2, 2), PenaltySpec()), DimensionError);
    }
}

TEST_CASE("objective_multinomial")
{
    SUBCASE("zero coefficients give n log M")
    {
        Rng rng(8);
        const auto prob = random_multinomial(rng, 13, 4, 3);
        CHECK(objective_multinomial(prob.x, prob.y, CoefficientMatrix::zeros(4, 3), PenaltySpec(0.7, 1.0)) ==
              doctest::Approx(13.0 * std::log(3.0)).epsilon(1e-14));
    }
    SUBCASE("saturated predictor does not overflow")
    {
        const DesignMatrix x(Matrix::Zero(1, 1));
        const auto y = ResponseMatrix::from_labels({1}, 2);
        CoefficientMatrix b = CoefficientMatrix::zeros(1, 2);
        b.intercept << 1000.0, 0.0;
        const double value = objective_multinomial(x, y, b, PenaltySpec(0.0, 1.0));
        CHECK(std::isfinite(value));
        CHECK(value >= 0.0);
        CHECK(value <= 1e-300);

        // wrong class at the same magnitude costs exactly the margin
        b.intercept << 0.0, 1000.0;
        CHECK(objective_multinomial(x, y, b, PenaltySpec(0.0, 1.0)) == doctest::Approx(1000.0));
    }
    SUBCASE("two-class hand evaluation")
    {
        const DesignMatrix x(Matrix::Zero(1, 1));
        const auto y = ResponseMatrix::from_labels({1}, 2);
        CoefficientMatrix b = CoefficientMatrix::zeros(1, 2);
        b.intercept << std::log(2.0), 0.0;
        // p = (2/3, 1/3)
        CHECK(objective_multinomial(x, y, b, PenaltySpec(0.0, 1.0)) ==
              doctest::Approx(-std::log(2.0 / 3.0)).epsilon(1e-15));
        CHECK(objective_multinomial(x, y, b, PenaltySpec(0.0, 1.0)) == doctest::Approx(0.405465).epsilon(1e-6));
    }
}

TEST_CASE("objectives are invariant under a joint row permutation")
{
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = random_gaussian(rng, 10, 4, 2);
        const auto mn = random_multinomial(rng, 10, 4, 3);
        std::vector<Index> order(10);
        std::iota(order.begin(), order.end(), Index{0});
        for (Index i = 9; i > 0; --i) std::swap(order[i], order[static_cast<Index>(rng.uniform() * (i + 1))]);
        Eigen::PermutationMatrix<Eigen::Dynamic> perm(10);
        for (Index i = 0; i < 10; ++i) perm.indices()[i] = static_cast<int>(order[i]);

        const CoefficientMatrix bg(grpnet::testing::normal_matrix(rng, 4, 2), grpnet::testing::normal_matrix(rng, 2, 1));
        const CoefficientMatrix bm(grpnet::testing::normal_matrix(rng, 4, 3), grpnet::testing::normal_matrix(rng, 3, 1));
        const PenaltySpec spec(0.4, 0.6);

        const DesignMatrix xg(perm * g.x.values());
        const ResponseMatrix yg(perm * g.y.values(), Family::Gaussian);
        CHECK(objective_gaussian(xg, yg, bg, spec) == doctest::Approx(objective_gaussian(g.x, g.y, bg, spec)).epsilon(1e-13));

        const DesignMatrix xm(perm * mn.x.values());
        const ResponseMatrix ym(perm * mn.y.values(), Family::Multinomial);
        CHECK(objective_multinomial(xm, ym, bm, spec) ==
              doctest::Approx(objective_multinomial(mn.x, mn.y, bm, spec)).epsilon(1e-13));
    }
}

TEST_CASE("gaussian objective scales quadratically with responses, coefficients and lambda")
{
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = random_gaussian(rng, 8, 5, 3);
        const CoefficientMatrix b(grpnet::testing::normal_matrix(rng, 5, 3), grpnet::testing::normal_matrix(rng, 3, 1));
        const double c = 0.1 + 3.0 * rng.uniform();
        const double lambda = 2.0 * rng.uniform();
        const ResponseMatrix cy(c * g.y.values(), Family::Gaussian);
        const CoefficientMatrix cb(c * b.beta, c * b.intercept);
        CHECK(objective_gaussian(g.x, cy, cb, PenaltySpec(c * lambda, 1.0)) ==
              doctest::Approx(c * c * objective_gaussian(g.x, g.y, b, PenaltySpec(lambda, 1.0))).epsilon(1e-12));
    }
}

TEST_CASE("unpenalized multinomial loss ignores constant shifts of a coefficient row")
{
    Rng rng(51);
    for (int trial = 0; trial < 10; ++trial) {
        const auto mn = random_multinomial(rng, 15, 4, 4);
        const CoefficientMatrix b(grpnet::testing::normal_matrix(rng, 4, 4), grpnet::testing::normal_matrix(rng, 4, 1));
        CoefficientMatrix shifted = b;
        const auto row = static_cast<Index>(rng.uniform() * 4);
        shifted.beta.row(row).array() += 5.0 * rng.normal();
        CHECK(objective_multinomial(mn.x, mn.y, shifted, PenaltySpec(0.0, 1.0)) ==
              doctest::Approx(objective_multinomial(mn.x, mn.y, b, PenaltySpec(0.0, 1.0))).epsilon(1e-12));
    }
}
