#include "modcross/quadforms.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace modcross {

bool is_discriminant(const Int& D) {
    if (sgn(D) <= 0) return false;
    const unsigned long r = mpz_fdiv_ui(D.get_mpz_t(), 4);
    return (r == 0 || r == 1) && !is_square(D);
}

bool is_fundamental_discriminant(const Int& D) {
    if (!is_discriminant(D)) return false;
    const unsigned long r = mpz_fdiv_ui(D.get_mpz_t(), 4);
    if (r == 1) return is_squarefree(D);
    Int m = D / 4;
    const unsigned long rm = mpz_fdiv_ui(m.get_mpz_t(), 4);
    return (rm == 2 || rm == 3) && is_squarefree(m);
}

void require_discriminant(const Int& D) {
    if (!is_discriminant(D))
        throw domain_error("not a non-square discriminant (need D > 0, D = 0,1 mod 4, D non-square): " + D.get_str());
}

// ---------------------------------------------------------------- Form

Form::Form(Int a, Int b, Int c, Unchecked) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

Form::Form(Int a, Int b, Int c) : Form(std::move(a), std::move(b), std::move(c), Unchecked{}) {
    Int D = discriminant();
    if (sgn(D) <= 0 || is_square(D))
        throw domain_error("form " + str() + " has discriminant " + D.get_str() + ", which is not a positive non-square");
    if (gcd(a_, b_, c_) != 1) throw domain_error("form " + str() + " is not primitive");
}

Form Form::trusted(Int a, Int b, Int c) { return Form(std::move(a), std::move(b), std::move(c), Unchecked{}); }

std::string Form::str() const { return "(" + a_.get_str() + "," + b_.get_str() + "," + c_.get_str() + ")"; }

std::strong_ordering operator<=>(const Form& l, const Form& r) {
    if (int x = cmp(l.a_, r.a_)) return x < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (int x = cmp(l.b_, r.b_)) return x < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (int x = cmp(l.c_, r.c_)) return x < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Form& f) { return os << f.str(); }

std::size_t FormHash::operator()(const Form& f) const noexcept {
    IntHash h;
    std::size_t x = h(f.a());
    x = x * 1000003u ^ h(f.b());
    x = x * 1000003u ^ h(f.c());
    return x;
}

// ---------------------------------------------------------------- reduction

namespace {

// b' = -b mod 2|c| in the window that makes (c, b', c') as reduced as possible:
// (-|c|, |c|] when |c| > sqrt D, otherwise (sqrt D - 2|c|, sqrt D).
struct RhoMove {
    Form next;
    Int delta;  // b' = -b + 2 c delta
};

RhoMove rho_move(const Form& q, const Int& D, const Int& root) {
    const Int& c = q.c();
    Int ac = abs(c);
    Int m = 2 * ac;
    Int lo = ac > root ? Int(-ac + 1) : Int(root - m + 1);
    Int bp = lo + fmod_pos(-q.b() - lo, m);
    Int cp = (bp * bp - D) / (4 * c);
    Int delta = (bp + q.b()) / (2 * c);
    return {Form::trusted(c, bp, cp), delta};
}

bool is_reduced_with(const Form& q, const Int& root) {
    const Int& b = q.b();
    if (sgn(b) <= 0 || b > root) return false;
    Int twice_a = 2 * abs(q.a());
    return twice_a - b <= root && twice_a + b > root;
}

}  // namespace

bool is_reduced(const Form& q) { return is_reduced_with(q, isqrt(q.discriminant())); }

Form rho_step(const Form& q) {
    Int D = q.discriminant();
    Int root = isqrt(D);
    if (!is_reduced_with(q, root)) throw domain_error("rho_step: form " + q.str() + " is not reduced");
    return rho_move(q, D, root).next;
}

Form reduce(const Form& q) {
    Int D = q.discriminant();
    Int root = isqrt(D);
    Form cur = q;
    while (!is_reduced_with(cur, root)) cur = rho_move(cur, D, root).next;
    return cur;
}

FormCycle::FormCycle(std::vector<Form> members) : forms_(std::move(members)) {
    if (forms_.empty()) throw domain_error("FormCycle: empty cycle");
    auto least = std::min_element(forms_.begin(), forms_.end());
    std::rotate(forms_.begin(), least, forms_.end());
}

bool FormCycle::contains(const Form& f) const { return std::find(forms_.begin(), forms_.end(), f) != forms_.end(); }

namespace {

std::vector<Form> walk_cycle(const Form& start, const Int& D, const Int& root) {
    std::vector<Form> members{start};
    for (Form cur = rho_move(start, D, root).next; cur != start; cur = rho_move(cur, D, root).next) members.push_back(cur);
    return members;
}

}  // namespace

FormCycle cycle(const Form& q) {
    Int D = q.discriminant();
    Int root = isqrt(D);
    return FormCycle(walk_cycle(reduce(q), D, root));
}

std::vector<FormCycle> class_representatives(const Int& D) {
    require_discriminant(D);
    const Int root = isqrt(D);
    const unsigned long s = root.get_ui();
    const bool odd = mpz_odd_p(D.get_mpz_t()) != 0;

    // Reduced forms: 0 < b <= s, b = D mod 2, ac = (b^2 - D)/4, and
    // s < 2|a| + b, 2|a| - b <= s.
    std::vector<Form> reduced;
    for (unsigned long b = odd ? 1 : 2; b <= s; b += 2) {
        Int n = (D - Int(b) * b) / 4;  // -ac > 0
        const unsigned long a_lo = (s - b) / 2 + 1;
        const unsigned long a_hi = (s + b) / 2;
        for (unsigned long a = a_lo; a <= a_hi; ++a) {
            if (mpz_divisible_ui_p(n.get_mpz_t(), a) == 0) continue;
            Int c = n / a;
            if (gcd(gcd(Int(a), Int(b)), c) != 1) continue;
            reduced.push_back(Form::trusted(Int(a), Int(b), -c));
            reduced.push_back(Form::trusted(-Int(a), Int(b), c));
        }
    }

    std::unordered_set<Form, FormHash> seen;
    std::vector<FormCycle> out;
    std::sort(reduced.begin(), reduced.end());
    for (const Form& f : reduced) {
        if (seen.contains(f)) continue;
        std::vector<Form> members = walk_cycle(f, D, root);
        for (const Form& m : members) seen.insert(m);
        out.emplace_back(std::move(members));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t class_number(const Int& D) { return class_representatives(D).size(); }

// ---------------------------------------------------------------- Pell

namespace detail {

PellSolution pell_from_cycle(const Int& D) {
    require_discriminant(D);
    const Int root = isqrt(D);
    const Int b0 = mpz_odd_p(D.get_mpz_t()) ? 1 : 0;
    Form start = reduce(Form::trusted(1, b0, (b0 * b0 - D) / 4));
    // Each rho move is the substitution (x, y) -> (-y, x + delta y).
    Matrix2 acc = Matrix2::identity();
    Form cur = start;
    do {
        RhoMove mv = rho_move(cur, D, root);
        acc = acc * Matrix2{0, -1, 1, mv.delta};
        cur = mv.next;
    } while (cur != start);
    Int s = abs(acc.trace());
    Int t = abs(acc.c) / abs(start.a());
    if (s * s - t * t * D != 4) throw consistency_error("pell_from_cycle: cycle automorph does not solve s^2 - t^2 D = 4 for D = " + D.get_str());
    return {s, t, D};
}

}  // namespace detail

PellSolution pell_min(const Int& D) {
    require_discriminant(D);
    for (unsigned long t = 1; t <= detail::kPellAscendingLimit; ++t) {
        Int v = 4 + Int(t) * t * D;
        if (is_square(v)) return {isqrt(v), Int(t), D};
    }
    return detail::pell_from_cycle(D);
}

QuadIrr fundamental_unit(const Int& D) {
    PellSolution p = pell_min(D);
    return QuadIrr(p.s, p.t, D, 2);
}

// ---------------------------------------------------------------- matrices

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Matrix2 Matrix2::pow(unsigned k) const {
    Matrix2 result = identity();
    Matrix2 base = *this;
    while (k > 0) {
        if (k & 1u) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

std::ostream& operator<<(std::ostream& os, const Matrix2& m) {
    return os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]]";
}

QuadIrr mobius(const Matrix2& m, const QuadIrr& x) {
    // x = (p + q sqrt d)/r; numerator and denominator scaled by r
    const Int& p = x.p();
    const Int& q = x.q();
    const Int& d = x.d();
    const Int& r = x.r();
    Int np = m.a * p + m.b * r, nq = m.a * q;
    Int dp = m.c * p + m.d * r, dq = m.c * q;
    // (np + nq s)(dp - dq s) / (dp^2 - dq^2 d)
    Int den = dp * dp - dq * dq * d;
    if (sgn(den) == 0) throw domain_error("mobius: image is the point at infinity");
    return QuadIrr(np * dp - nq * dq * d, nq * dp - np * dq, d, den);
}

ContentForm form_from_matrix(const Matrix2& m) {
    if (m.det() != 1) throw domain_error("form_from_matrix: determinant is not 1");
    if (abs(m.trace()) < 3) throw domain_error("form_from_matrix: matrix is not hyperbolic (|trace| < 3)");
    Int a = m.b, b = m.d - m.a, c = -m.c;
    Int g = gcd(a, b, c);
    return {g, Form::trusted(a / g, b / g, c / g)};
}

Matrix2 automorph(const Form& q, const PellSolution& sol) {
    if (q.discriminant() != sol.D) throw domain_error("automorph: discriminant mismatch");
    Int bt = q.b() * sol.t;
    if (!mpz_even_p(Int(sol.s - bt).get_mpz_t())) throw consistency_error("automorph: parity of s - b t");
    return {(sol.s - bt) / 2, -q.c() * sol.t, q.a() * sol.t, (sol.s + bt) / 2};
}

RootPair roots(const Form& q) {
    Int D = q.discriminant();
    return {QuadIrr(-q.b(), 1, D, 2 * q.a()), QuadIrr(-q.b(), -1, D, 2 * q.a())};
}

Form act(const Matrix2& g, const Form& q) {
    // q(X, Y) with X = d x - b y, Y = -c x + a y
    const Int &p = g.d, &pq = g.b, &r = g.c, &s = g.a;
    Int x0 = p, y0 = -pq;  // X = x0 x + y0 y
    Int x1 = -r, y1 = s;   // Y = x1 x + y1 y
    Int A = q.a() * x0 * x0 + q.b() * x0 * x1 + q.c() * x1 * x1;
    Int B = 2 * q.a() * x0 * y0 + q.b() * (x0 * y1 + y0 * x1) + 2 * q.c() * x1 * y1;
    Int C = q.a() * y0 * y0 + q.b() * y0 * y1 + q.c() * y1 * y1;
    return Form::trusted(A, B, C);
}

}  // namespace modcross
