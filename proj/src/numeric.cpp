#include "procova/numeric.hpp"

#include <string>

#include "procova/error.hpp"

namespace procova {

double reciprocal_condition(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double largest = s(0);
  if (!(largest > 0.0)) return 0.0;
  return s(s.size() - 1) / largest;
}

Vector solve_least_squares(const Matrix& design, const Vector& response) {
  if (design.rows() != response.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "design has " + std::to_string(design.rows()) + " rows but response has " +
                    std::to_string(response.size()) + " entries");
  }
  if (design.cols() == 0 || design.rows() < design.cols()) {
    throw Error(ErrorKind::RankDeficient,
                "need at least as many rows as columns (" + std::to_string(design.rows()) + " < " +
                    std::to_string(design.cols()) + ")");
  }
  if (!all_finite(design) || !response.allFinite()) {
    throw Error(ErrorKind::NonFinite, "non-finite entries in least-squares input");
  }

  Eigen::HouseholderQR<Matrix> qr(design);
  const auto p = design.cols();
  const Matrix r = qr.matrixQR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const double rcond = reciprocal_condition(r);
  if (rcond < kMinReciprocalCondition) {
    throw Error(ErrorKind::RankDeficient,
                "design is numerically rank deficient (rcond " + std::to_string(rcond) + ")");
  }
  return qr.solve(response);
}

Matrix invert(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "cannot invert a non-square matrix");
  }
  const double rcond = reciprocal_condition(m);
  if (rcond < kMinReciprocalCondition) {
    throw Error(ErrorKind::Singular, "matrix is singular (rcond " + std::to_string(rcond) + ")");
  }
  return m.partialPivLu().inverse();
}

double quadratic_form(const Vector& e, const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() != e.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "quadratic form needs a " + std::to_string(e.size()) + "x" +
                    std::to_string(e.size()) + " matrix");
  }
  return e.dot(m * e);
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace procova
