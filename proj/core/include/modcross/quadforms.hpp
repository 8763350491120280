#pragma once

// Indefinite binary quadratic forms ax^2 + bxy + cy^2: reduction, rho-cycles,
// proper class numbers, Pell solutions of s^2 - t^2 D = 4, automorphs, and the
// dictionary between forms and hyperbolic matrices.

#include "modcross/exact_arith.hpp"

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace modcross {

/// True iff D > 0, D = 0 or 1 mod 4, and D is not a perfect square.
bool is_discriminant(const Int& D);

/// Discriminant of a real quadratic field: D = 1 mod 4 squarefree, or
/// D = 4m with m = 2, 3 mod 4 squarefree.
bool is_fundamental_discriminant(const Int& D);

/// Throws domain_error unless is_discriminant(D).
void require_discriminant(const Int& D);

/// Primitive indefinite form with non-square positive discriminant.
class Form {
public:
    /// Validating constructor; throws domain_error on a square or
    /// non-positive discriminant or an imprimitive triple.
    Form(Int a, Int b, Int c);

    /// Skips validation. Only for triples already known to satisfy the invariants.
    static Form trusted(Int a, Int b, Int c);

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }

    Int discriminant() const { return b_ * b_ - 4 * a_ * c_; }
    Form negated() const { return trusted(-a_, -b_, -c_); }

    /// Value at (x, y).
    Int eval(const Int& x, const Int& y) const { return a_ * x * x + b_ * x * y + c_ * y * y; }

    std::string str() const;

    friend bool operator==(const Form&, const Form&) = default;
    friend std::strong_ordering operator<=>(const Form& l, const Form& r);

private:
    struct Unchecked {};
    Form(Int a, Int b, Int c, Unchecked);

    Int a_, b_, c_;
};

std::ostream& operator<<(std::ostream& os, const Form& f);

struct FormHash {
    std::size_t operator()(const Form& f) const noexcept;
};

inline Int discriminant(const Form& q) { return q.discriminant(); }

/// Same axis: equal or negated.
inline bool same_axis(const Form& f, const Form& g) { return f == g || f == g.negated(); }

/// Gauss reduced: |sqrt(D) - 2|a|| < b < sqrt(D), decided with integer arithmetic.
bool is_reduced(const Form& q);

/// Right neighbour of a reduced form: (c, b', c') with b' = -b mod 2c in the
/// reduced window. Throws domain_error for a non-reduced argument.
Form rho_step(const Form& q);

/// A reduced form properly equivalent to q.
Form reduce(const Form& q);

/// Ordered rho-cycle of reduced forms, rotated so the lexicographically
/// least member comes first. Equal classes give identical cycles.
class FormCycle {
public:
    /// `members` must be a closed rho-orbit in rho order; it is rotated into canonical position.
    explicit FormCycle(std::vector<Form> members);

    const std::vector<Form>& forms() const { return forms_; }
    const Form& front() const { return forms_.front(); }
    std::size_t size() const { return forms_.size(); }
    Int discriminant() const { return forms_.front().discriminant(); }
    bool contains(const Form& f) const;

    friend bool operator==(const FormCycle& l, const FormCycle& r) { return l.forms_ == r.forms_; }
    friend std::strong_ordering operator<=>(const FormCycle& l, const FormCycle& r) { return l.front() <=> r.front(); }

private:
    std::vector<Form> forms_;
};

FormCycle cycle(const Form& q);

/// All rho-cycles of primitive reduced forms of discriminant D, ordered by
/// their canonical first member. The count is the proper (narrow) class number.
std::vector<FormCycle> class_representatives(const Int& D);

std::size_t class_number(const Int& D);

/// Minimal positive solution of s^2 - t^2 D = 4.
struct PellSolution {
    Int s;
    Int t;
    Int D;

    friend bool operator==(const PellSolution&, const PellSolution&) = default;
};

PellSolution pell_min(const Int& D);

namespace detail {
/// Pell solution read off the automorph accumulated over one rho-period of the
/// principal cycle. Used by pell_min when ascending search gives up.
PellSolution pell_from_cycle(const Int& D);
inline constexpr unsigned long kPellAscendingLimit = 10000;
}  // namespace detail

/// epsilon_D = (s + t sqrt D) / 2 from pell_min(D).
QuadIrr fundamental_unit(const Int& D);

/// Integer 2x2 matrix [[a, b], [c, d]].
struct Matrix2 {
    Int a, b, c, d;

    Int trace() const { return a + d; }
    Int det() const { return a * d - b * c; }
    Matrix2 transpose() const { return {a, c, b, d}; }
    /// Inverse of a determinant-one matrix.
    Matrix2 inverse() const { return {d, -b, -c, a}; }
    Matrix2 pow(unsigned k) const;

    friend Matrix2 operator*(const Matrix2& x, const Matrix2& y);
    friend bool operator==(const Matrix2&, const Matrix2&) = default;

    static Matrix2 identity() { return {1, 0, 0, 1}; }
};

std::ostream& operator<<(std::ostream& os, const Matrix2& m);

/// Mobius image (a x + b) / (c x + d) of a quadratic irrational.
QuadIrr mobius(const Matrix2& m, const QuadIrr& x);

/// Content and primitive part of a form.
struct ContentForm {
    Int content;
    Form form;
};

/// The form b x^2 + (d - a) x y - c y^2 of a hyperbolic determinant-one matrix,
/// split into content and primitive part. Throws domain_error when |trace| < 3
/// or det != 1.
ContentForm form_from_matrix(const Matrix2& m);

/// [[(s - b t)/2, -c t], [a t, (s + b t)/2]]: q(M v) = q(v), trace s, and M
/// fixes both roots of q(x, 1) as a Mobius map. transpose(M) maps back to
/// (t, q) under form_from_matrix.
Matrix2 automorph(const Form& q, const PellSolution& sol);

/// Roots of q(x, 1). The geodesic of q runs from `repelling` to `attracting`,
/// the attracting and repelling fixed points of automorph(q, pell_min(D)).
struct RootPair {
    QuadIrr attracting;  // (-b + sqrt D) / 2a
    QuadIrr repelling;   // (-b - sqrt D) / 2a
};

RootPair roots(const Form& q);

/// Push-forward g.q = q o g^{-1}: its roots are the Mobius images under g of
/// the roots of q, with orientation preserved.
Form act(const Matrix2& g, const Form& q);

}  // namespace modcross
