#pragma once

#include <cmath>
#include <string>

#include "assoclab/rational.hpp"

namespace assoclab {

// Exact arithmetic in Q(sqrt(q)): values a + b*sqrt(q). The radicand rides
// along with the value; pure rationals carry q = 0 and mix with anything.
// This is how hexagon checks run when recover_mu yields an irrational root.
class QuadExt {
  public:
    QuadExt() : a_(0), b_(0), q_(0) {}
    explicit QuadExt(Rat a) : a_(std::move(a)), b_(0), q_(0) {}
    QuadExt(Rat a, Rat b, Rat q) : a_(std::move(a)), b_(std::move(b)), q_(std::move(q)) {
        if (b_ == 0) q_ = 0;
        if (q_ == 0) { a_ += b_ * 0; b_ = 0; }
    }
    static QuadExt root(const Rat& q) { return QuadExt(Rat(0), Rat(1), q); }

    const Rat& rational_part() const { return a_; }
    const Rat& root_part() const { return b_; }
    const Rat& radicand() const { return q_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        Rat q = joint_radicand(x, y);
        return QuadExt(x.a_ + y.a_, x.b_ + y.b_, q);
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
        Rat q = joint_radicand(x, y);
        return QuadExt(x.a_ - y.a_, x.b_ - y.b_, q);
    }
    QuadExt operator-() const { return QuadExt(-a_, -b_, q_); }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        Rat q = joint_radicand(x, y);
        return QuadExt(x.a_ * y.a_ + x.b_ * y.b_ * q, x.a_ * y.b_ + x.b_ * y.a_, q);
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
        Rat q = joint_radicand(x, y);
        Rat d = y.a_ * y.a_ - y.b_ * y.b_ * q;  // norm; nonzero when q non-square
        if (d == 0) throw InputError("division by zero-norm element in Q(sqrt(q))");
        return QuadExt((x.a_ * y.a_ - x.b_ * y.b_ * q) / d,
                       (x.b_ * y.a_ - x.a_ * y.b_) / d, q);
    }
    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.q_ == y.q_);
    }

    double approx() const {
        double s = std::sqrt(std::fabs(q_.get_d()));
        double re = a_.get_d(), ro = b_.get_d() * s;
        if (q_ >= 0) return std::fabs(re + ro);
        return std::fabs(re) + std::fabs(ro);  // |a + b i sqrt(-q)| bound
    }

    std::string to_string() const {
        if (b_ == 0) return rat_to_string(a_);
        std::string s = rat_to_string(b_) + "*sqrt(" + rat_to_string(q_) + ")";
        if (a_ == 0) return s;
        return rat_to_string(a_) + (b_ > 0 ? "+" : "") + s;
    }

  private:
    static Rat joint_radicand(const QuadExt& x, const QuadExt& y) {
        if (x.b_ == 0) return y.q_;
        if (y.b_ == 0) return x.q_;
        if (x.q_ != y.q_)
            throw InputError("mixing different quadratic extensions");
        return x.q_;
    }

    Rat a_, b_, q_;
};

}  // namespace assoclab
