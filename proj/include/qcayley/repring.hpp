#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qcayley {

enum class FactorKind { Orthogonal, Unitary, Cyclic };
enum class Letter : std::uint8_t { g = 0, g_bar = 1 };

const char* kind_name(FactorKind kind);

struct Direction {
  int factor_id = 0;
  Letter letter = Letter::g;
  int vector_dim = 1;

  friend bool operator==(const Direction&, const Direction&) = default;
  friend auto operator<=>(const Direction&, const Direction&) = default;
};

// Reduced word; the empty word is the trivial corepresentation.
// Ordering is length-lexicographic.
struct IrrWord {
  std::vector<Direction> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  const Direction& back() const { return letters.back(); }

  friend bool operator==(const IrrWord&, const IrrWord&) = default;
  friend std::strong_ordering operator<=>(const IrrWord& a, const IrrWord& b);
};

struct Decomposition {
  std::optional<IrrWord> plus_part;
  std::optional<IrrWord> minus_part;
};

class FactorSpec {
 public:
  // Q must be invertible with Q*conj(Q) scalar; rescaled on construction.
  static FactorSpec orthogonal(const Eigen::MatrixXcd& Q, int factor_id = 0);
  // Shortcut Q = antidiag(sqrt(q), -1/sqrt(q)).
  static FactorSpec orthogonal_q(double q, int factor_id = 0);
  static FactorSpec unitary(const Eigen::MatrixXcd& Q, int factor_id = 0);
  // Shortcut Q = diag(sqrt(q), 1/sqrt(q)).
  static FactorSpec unitary_q(double q, int factor_id = 0);
  // order 0 is the infinite cyclic group.
  static FactorSpec cyclic(int order, int factor_id = 0);

  FactorKind kind() const { return kind_; }
  int factor_id() const { return factor_id_; }
  FactorSpec with_id(int factor_id) const;
  std::optional<double> q_param() const { return q_param_; }
  // Normalized so that Tr(Q*Q) = Tr((Q*Q)^-1). Empty for cyclic factors.
  const Eigen::MatrixXcd& matrix_Q() const { return Q_; }
  int n() const { return kind_ == FactorKind::Cyclic ? 1 : static_cast<int>(Q_.rows()); }
  int cyclic_order() const { return cyclic_order_; }
  double m1() const { return m1_; }
  bool exceptional() const { return exceptional_; }
  // sigma with Q conj(Q) = sigma * I; 0 unless orthogonal.
  int orthogonal_sign() const { return orthogonal_sign_; }
  bool self_conjugate() const { return kind_ == FactorKind::Orthogonal; }

  std::vector<Direction> directions() const;

 private:
  FactorSpec() = default;
  static FactorSpec from_matrix(FactorKind kind, const Eigen::MatrixXcd& Q, int factor_id);

  FactorKind kind_ = FactorKind::Cyclic;
  int factor_id_ = 0;
  std::optional<double> q_param_;
  Eigen::MatrixXcd Q_;
  int cyclic_order_ = 0;
  double m1_ = 1.0;
  bool exceptional_ = false;
  int orthogonal_sign_ = 0;
};

struct DimSequence {
  double m1 = 2.0;
  double growth_rate_a = 1.0;
  bool exceptional = false;
  int n = 0;                      // 0 when only m1 is known
  std::vector<double> m;          // m[0..kmax]
  std::vector<std::uint64_t> d;   // d[0..], truncated where uint64 would overflow

  int kmax() const { return static_cast<int>(m.size()) - 1; }
  // m_k with m_{-1} = 0; IndexOutOfRange beyond kmax.
  double at(int k) const;
};

// a >= 1 with a + 1/a = m1.
double growth_rate(double m1);
bool is_exceptional_m1(double m1);

DimSequence dim_sequence(const FactorSpec& factor, int kmax);
DimSequence dim_sequence_from_m1(double m1, int kmax, int n = 0);

struct Run {
  int factor_id;
  std::size_t start;
  std::size_t length;
};

class FreeProduct {
 public:
  explicit FreeProduct(std::vector<FactorSpec> factors);

  const std::vector<FactorSpec>& factors() const { return factors_; }
  const FactorSpec& factor(int factor_id) const;
  bool all_dimension_one() const;

  // Sorted by (factor_id, letter); orthogonal factors contribute one direction.
  std::vector<Direction> directions() const;
  Direction direction(int factor_id, Letter letter) const;
  Direction conjugate(const Direction& d) const;

  IrrWord reduce_word(const std::vector<Direction>& letters) const;
  Decomposition fuse_generator(const IrrWord& alpha, const Direction& gamma) const;
  IrrWord conjugate(const IrrWord& alpha) const;
  std::vector<Run> runs(const IrrWord& alpha) const;
  double quantum_dim(const IrrWord& alpha) const;
  std::uint64_t vector_dim(const IrrWord& alpha) const;

  IrrWord parse_word(std::string_view text) const;

 private:
  Direction canonical(const Direction& d) const;
  std::size_t index_of(int factor_id) const;

  std::vector<FactorSpec> factors_;
};

std::string format_direction(const Direction& d);
std::string format_word(const IrrWord& w);

}  // namespace qcayley
