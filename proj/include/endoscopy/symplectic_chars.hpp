#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace endoscopy {

/// Imaginary parts below this are treated as round-off when asserting that
/// a character value is real.
inline constexpr double kRealTolerance = 1e-12;

/// A semisimple conjugacy class of the compact symplectic group USp(2n).
///
/// The class is stored as n eigenvalue angles; the 2n eigenvalues are
/// e^{+i theta_j} and e^{-i theta_j}. Angles are reduced to [0, pi] and kept
/// sorted ascending, which picks the canonical point of the Weyl orbit.
class SemisimpleClass {
public:
    explicit SemisimpleClass(std::vector<double> angles);

    static SemisimpleClass identity(int n);

    /// Builds a class from a full list of 2n unit eigenvalues. Throws if the
    /// list is not closed under inversion or some eigenvalue is off the unit
    /// circle (non-tempered classes are not representable).
    static SemisimpleClass from_eigenvalues(std::span<const std::complex<double>> eigenvalues,
                                            double tolerance = 1e-9);

    int rank() const { return static_cast<int>(angles_.size()); }
    std::span<const double> angles() const { return angles_; }

    /// The class of c^m.
    SemisimpleClass power(int m) const;

    /// All 2n eigenvalues, e^{i theta_j} first then their inverses.
    std::vector<std::complex<double>> eigenvalues() const;

    bool operator==(const SemisimpleClass&) const = default;

private:
    std::vector<double> angles_;
};

/// Reduces an angle to the representative in [0, pi] of {theta, -theta} mod 2pi.
double canonical_angle(double theta);

/// Representations of Sp(2n, C) that the library can evaluate.
///
/// lambda_std(a) is the a-th exterior power of the standard representation,
/// fund(a) the a-th fundamental representation r_a (defined by
/// Lambda^a std = r_a + Lambda^{a-2} std), ext_square is Lambda^2 std and
/// tensor is the tensor product of two labels.
class RepLabel {
public:
    enum class Kind { LambdaStd, Fund, Std, Tensor, ExtSquare };

    static RepLabel lambda_std(int a);
    static RepLabel fund(int a);
    static RepLabel standard();
    static RepLabel ext_square();
    static RepLabel tensor(const RepLabel& left, const RepLabel& right);

    /// Parses the names produced by name(): "std", "ext2", "lambda3",
    /// "fund2", "tensor(std,fund2)". Throws std::invalid_argument.
    static RepLabel parse(std::string_view text);

    Kind kind() const { return kind_; }
    int degree() const { return degree_; }
    const RepLabel& left() const { return *left_; }
    const RepLabel& right() const { return *right_; }

    std::string name() const;

    /// Throws std::out_of_range if the label is not a representation of
    /// Sp(2n) (fund(a) needs 1 <= a <= n).
    void check_rank(int n) const;

    /// Dimension as a representation of Sp(2n).
    std::int64_t dimension(int n) const;

private:
    RepLabel(Kind kind, int degree) : kind_(kind), degree_(degree) {}

    Kind kind_;
    int degree_ = 0;
    std::shared_ptr<const RepLabel> left_;
    std::shared_ptr<const RepLabel> right_;
};

/// Coefficients e_0..e_{2n} of prod_j (1 + 2 cos(theta_j) t + t^2), i.e. the
/// elementary symmetric polynomials of the 2n eigenvalues. Each conjugate
/// pair is folded into one real quadratic so no complex arithmetic is used.
std::vector<double> elementary_symmetric(std::span<const double> angles);

/// Same as above, writing into a caller-owned buffer of size 2n+1.
void elementary_symmetric(std::span<const double> angles, std::span<double> out);

/// Power sum tr(std(c^m)) = sum_j 2 cos(m theta_j).
double std_power_sum(std::span<const double> angles, int m);

/// Character of Lambda^a(std) at c: e_a of the eigenvalues; 0 for a < 0 or
/// a > 2n.
double char_lambda(int a, const SemisimpleClass& c);

/// Character of the fundamental representation r_a, 1 <= a <= n. Throws
/// std::out_of_range otherwise.
double char_fund(int a, const SemisimpleClass& c);

/// Character of r evaluated directly on an angle list.
double character(const RepLabel& r, std::span<const double> angles);

/// tr(r(c^m)).
double trace_power(const RepLabel& r, const SemisimpleClass& c, int m);

/// Weight of a torus character: the eigenvalue is exp(i <w, theta>).
using Weight = std::vector<int>;
using WeightMultiset = std::map<Weight, std::int64_t>;

/// Weights of r as a representation of Sp(2n), with multiplicities. For
/// fund(a) this is the exact multiset difference Lambda^a minus Lambda^{a-2}.
WeightMultiset rep_weights(const RepLabel& r, int n);

/// Eigenvalues of r(c), one per weight (with multiplicity).
std::vector<std::complex<double>> rep_eigenvalues(const RepLabel& r, const SemisimpleClass& c);

/// A semisimple class of GL(m, C), stored as its eigenvalue multiset.
using GLClass = std::vector<std::complex<double>>;

GLClass gl_class(const SemisimpleClass& c);
GLClass direct_sum(const GLClass& a, const GLClass& b);
/// Eigenvalues {alpha * beta}, the class of the tensor product.
GLClass tensor_class(const GLClass& a, const GLClass& b);
/// Eigenvalues {alpha_i * alpha_j : i < j}.
GLClass exterior_square_class(const GLClass& a);

}  // namespace endoscopy
