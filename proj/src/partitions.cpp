#include "zm/partitions.hpp"

#include "zm/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

namespace zm {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1) throw InvalidInput("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw InvalidInput("partition parts must be weakly decreasing");
    }
    size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::string Partition::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
}

std::string Partition::to_json() const {
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + "]";
}

std::string FrobeniusCoords::to_json() const {
    auto arr = [](const std::vector<int>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + "]";
    };
    return "{\"p\":" + arr(p) + ",\"q\":" + arr(q) + "}";
}

Partition transpose(const Partition& lambda) {
    std::vector<int> cols;
    for (int j = 1; j <= lambda.row(1); ++j) {
        int c = 0;
        while (c < lambda.length() && lambda.row(c + 1) >= j) ++c;
        cols.push_back(c);
    }
    return Partition(std::move(cols));
}

int diagonal_length(const Partition& lambda) {
    int d = 0;
    while (d < lambda.length() && lambda.row(d + 1) >= d + 1) ++d;
    return d;
}

FrobeniusCoords frobenius(const Partition& lambda) {
    const Partition lt = transpose(lambda);
    FrobeniusCoords f;
    const int d = diagonal_length(lambda);
    for (int i = 1; i <= d; ++i) {
        f.p.push_back(lambda.row(i) - i);
        f.q.push_back(lt.row(i) - i);
    }
    return f;
}

Partition from_frobenius(const FrobeniusCoords& f) {
    if (f.p.size() != f.q.size()) throw InvalidInput("Frobenius coordinates must have equal lengths");
    const int d = f.rank();
    for (int i = 0; i < d; ++i) {
        if (f.p[static_cast<std::size_t>(i)] < 0 || f.q[static_cast<std::size_t>(i)] < 0)
            throw InvalidInput("Frobenius coordinates must be nonnegative");
        if (i > 0 && (f.p[static_cast<std::size_t>(i)] >= f.p[static_cast<std::size_t>(i - 1)] ||
                      f.q[static_cast<std::size_t>(i)] >= f.q[static_cast<std::size_t>(i - 1)]))
            throw InvalidInput("Frobenius coordinates must be strictly decreasing");
    }
    if (d == 0) return Partition();
    // rows 1..d come from p; rows below the diagonal are the column lengths beyond it
    const int rows = f.q[0] + 1;
    std::vector<int> parts(static_cast<std::size_t>(rows), 0);
    for (int i = 0; i < d; ++i) parts[static_cast<std::size_t>(i)] = f.p[static_cast<std::size_t>(i)] + i + 1;
    for (int r = d + 1; r <= rows; ++r) {
        int c = 0;
        for (int j = 0; j < d; ++j)
            if (f.q[static_cast<std::size_t>(j)] + j + 1 >= r) c = j + 1;
        parts[static_cast<std::size_t>(r - 1)] = c;
    }
    return Partition(std::move(parts));
}

ExponentialForm exponential_form(const Partition& lambda) {
    ExponentialForm e;
    e.r.assign(static_cast<std::size_t>(lambda.row(1) + 1), 0);
    for (int part : lambda.parts()) ++e.r[static_cast<std::size_t>(part)];
    return e;
}

int hook_length(const Partition& lambda, int i, int j) {
    if (!lambda.contains(i, j))
        throw BoxOutOfShape("box (" + std::to_string(i) + "," + std::to_string(j) + ") is not in " + lambda.to_string());
    int leg = 0;
    while (lambda.row(i + leg + 1) >= j) ++leg;
    return (lambda.row(i) - j) + leg + 1;
}

namespace {

BigInt dim_hook(const Partition& lambda) {
    BigInt prod = 1;
    for (int i = 1; i <= lambda.length(); ++i)
        for (int j = 1; j <= lambda.row(i); ++j) prod *= hook_length(lambda, i, j);
    return factorial(lambda.size()) / prod;
}

BigInt dim_frobenius(const Partition& lambda) {
    const FrobeniusCoords f = frobenius(lambda);
    const int d = f.rank();
    BigInt num = factorial(lambda.size()), den = 1;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j)
            num *= BigInt(f.p[static_cast<std::size_t>(i)] - f.p[static_cast<std::size_t>(j)]) *
                   (f.q[static_cast<std::size_t>(i)] - f.q[static_cast<std::size_t>(j)]);
        for (int j = 0; j < d; ++j) den *= f.p[static_cast<std::size_t>(i)] + f.q[static_cast<std::size_t>(j)] + 1;
        den *= factorial(f.p[static_cast<std::size_t>(i)]) * factorial(f.q[static_cast<std::size_t>(i)]);
    }
    return num / den;
}

void count_paths(const Partition& lambda, BigInt& count) {
    if (lambda.empty()) { ++count; return; }
    for (const Partition& mu : remove_boxes(lambda)) count_paths(mu, count);
}

}  // namespace

BigInt dim_rows(const Partition& lambda, int l) {
    if (l < lambda.length()) throw InvalidInput("row count l must be at least the length of the partition");
    BigInt num = factorial(lambda.size()), den = 1;
    for (int i = 1; i <= l; ++i) {
        for (int j = i + 1; j <= l; ++j) num *= lambda.row(i) - lambda.row(j) + j - i;
        den *= factorial(lambda.row(i) + l - i);
    }
    return num / den;
}

BigInt dim(const Partition& lambda, DimMethod method) {
    switch (method) {
        case DimMethod::hook: return dim_hook(lambda);
        case DimMethod::determinant: return dim_rows(lambda, lambda.length());
        case DimMethod::frobenius: return dim_frobenius(lambda);
        case DimMethod::paths: {
            BigInt count = 0;
            count_paths(lambda, count);
            return count;
        }
    }
    throw InvalidInput("unknown dim method");
}

std::vector<Partition> add_boxes(const Partition& mu) {
    std::vector<Partition> out;
    const int l = mu.length();
    for (int i = 1; i <= l + 1; ++i) {
        if (i == 1 || mu.row(i - 1) > mu.row(i)) {
            std::vector<int> parts = mu.parts();
            if (i == l + 1) parts.push_back(1); else ++parts[static_cast<std::size_t>(i - 1)];
            out.emplace_back(std::move(parts));
        }
    }
    return out;
}

std::vector<Partition> remove_boxes(const Partition& lambda) {
    std::vector<Partition> out;
    const int l = lambda.length();
    for (int i = 1; i <= l; ++i) {
        if (lambda.row(i) > lambda.row(i + 1)) {
            std::vector<int> parts = lambda.parts();
            if (--parts[static_cast<std::size_t>(i - 1)] == 0) parts.pop_back();
            out.emplace_back(std::move(parts));
        }
    }
    return out;
}

int kingman_multiplicity(const Partition& mu, const Partition& lambda) {
    if (lambda.size() != mu.size() + 1)
        throw NotAnEdge(lambda.to_string() + " does not cover " + mu.to_string());
    int changed = -1;
    for (int i = 1; i <= lambda.length(); ++i) {
        const int diff = lambda.row(i) - mu.row(i);
        if (diff == 0) continue;
        if (diff != 1 || changed != -1) throw NotAnEdge(lambda.to_string() + " does not cover " + mu.to_string());
        changed = i;
    }
    if (changed == -1 || mu.length() > lambda.length())
        throw NotAnEdge(lambda.to_string() + " does not cover " + mu.to_string());
    const int part = lambda.row(changed);
    return static_cast<int>(std::count(lambda.parts().begin(), lambda.parts().end(), part));
}

BigInt dim0(const Partition& lambda, Dim0Method method) {
    if (method == Dim0Method::closed_form) {
        BigInt den = 1;
        for (int part : lambda.parts()) den *= factorial(part);
        return factorial(lambda.size()) / den;
    }
    static std::mutex mutex;
    static std::map<Partition, BigInt> memo;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = memo.find(lambda);
        if (it != memo.end()) return it->second;
    }
    BigInt total = lambda.empty() ? BigInt(1) : BigInt(0);
    for (const Partition& mu : remove_boxes(lambda))
        total += dim0(mu, Dim0Method::recurrence) * kingman_multiplicity(mu, lambda);
    std::lock_guard<std::mutex> lock(mutex);
    memo.emplace(lambda, total);
    return total;
}

BigInt z_lambda(const Partition& lambda) {
    const ExponentialForm e = exponential_form(lambda);
    BigInt z = 1;
    for (int k = 1; k < static_cast<int>(e.r.size()); ++k) {
        const int r = e.r[static_cast<std::size_t>(k)];
        BigInt kr;
        mpz_ui_pow_ui(kr.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(r));
        z *= kr * factorial(r);
    }
    return z;
}

std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw InvalidInput("partitions_of requires n >= 0");
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int cap) {
        if (rest == 0) { out.emplace_back(cur); return; }
        for (int k = std::min(rest, cap); k >= 1; --k) {
            cur.push_back(k);
            rec(rest - k, k);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

namespace {
template <class F> bool is_negative(const F& v) { return v < 0; }
template <class F> double tolerance_for() { return FieldTraits<F>::exact ? 0.0 : 1e-12; }
}  // namespace

template <class F>
void validate_thoma_point(const ThomaPointT<F>& w) {
    auto check_seq = [](const std::vector<F>& v, const char* name) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (is_negative(v[i])) throw InvalidSimplexPoint(std::string(name) + " coordinates must be nonnegative");
            if (i > 0 && v[i] > v[i - 1]) throw InvalidSimplexPoint(std::string(name) + " coordinates must be weakly decreasing");
        }
    };
    check_seq(w.alpha, "alpha");
    check_seq(w.beta, "beta");
    if (is_negative(w.gamma)) throw InvalidSimplexPoint("gamma must be nonnegative");
    F total = w.gamma;
    for (const F& a : w.alpha) total += a;
    for (const F& b : w.beta) total += b;
    const F one = FieldTraits<F>::from_int(1);
    if (FieldTraits<F>::magnitude(total - one) > tolerance_for<F>())
        throw InvalidSimplexPoint("Thoma coordinates must sum to 1");
}

template <class F>
F extended_power_sum(const ThomaPointT<F>& w, int n) {
    if (n < 1) throw InvalidInput("extended power sum needs n >= 1");
    validate_thoma_point(w);
    if (n == 1) return FieldTraits<F>::from_int(1);
    F s = FieldTraits<F>::from_int(0), sb = FieldTraits<F>::from_int(0);
    auto power = [n](const F& x) {
        F r = FieldTraits<F>::from_int(1);
        for (int k = 0; k < n; ++k) r *= x;
        return r;
    };
    for (const F& a : w.alpha) s += power(a);
    for (const F& b : w.beta) sb += power(b);
    return (n % 2 == 0) ? F(s - sb) : F(s + sb);
}

template void validate_thoma_point<double>(const ThomaPointT<double>&);
template void validate_thoma_point<Rational>(const ThomaPointT<Rational>&);
template double extended_power_sum<double>(const ThomaPointT<double>&, int);
template Rational extended_power_sum<Rational>(const ThomaPointT<Rational>&, int);

}  // namespace zm
