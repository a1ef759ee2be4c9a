#include "twodd/perm.hpp"

#include "twodd/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace twodd {

namespace {

void check_degree(int n) {
    if (n < 1 || n > Perm::kMaxDegree) {
        throw PreconditionError("permutation degree " + std::to_string(n) + " outside [1, " +
                                std::to_string(Perm::kMaxDegree) + "]");
    }
}

} // namespace

Perm::Perm(int n) {
    check_degree(n);
    n_ = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) {
        img_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    }
}

Perm Perm::from_images(std::span<const int> images) {
    const int n = static_cast<int>(images.size());
    check_degree(n);
    Perm p(n);
    std::array<bool, kMaxDegree> seen{};
    for (int i = 0; i < n; ++i) {
        const int v = images[static_cast<std::size_t>(i)];
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
            throw PreconditionError("image sequence is not a bijection");
        }
        seen[static_cast<std::size_t>(v)] = true;
        p.img_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
    }
    return p;
}

Perm Perm::from_images(std::initializer_list<int> images) {
    return from_images(std::span<const int>(images.begin(), images.size()));
}

Perm Perm::from_one_based(std::initializer_list<int> images) {
    std::vector<int> zero(images);
    for (int& v : zero) {
        --v;
    }
    return from_images(zero);
}

bool Perm::is_identity() const noexcept {
    for (int i = 0; i < n_; ++i) {
        if (img_[static_cast<std::size_t>(i)] != i) {
            return false;
        }
    }
    return true;
}

Perm compose(const Perm& p, const Perm& q) {
    if (p.degree() != q.degree()) {
        throw PreconditionError("compose: degree mismatch " + std::to_string(p.degree()) + " vs " +
                                std::to_string(q.degree()));
    }
    Perm r = p;
    for (int i = 0; i < p.n_; ++i) {
        r.img_[static_cast<std::size_t>(i)] = q.img_[p.img_[static_cast<std::size_t>(i)]];
    }
    return r;
}

Perm inverse(const Perm& p) {
    Perm r = p;
    for (int i = 0; i < p.n_; ++i) {
        r.img_[p.img_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
    }
    return r;
}

int cycle_count(const Perm& p) {
    const int n = p.degree();
    std::array<bool, Perm::kMaxDegree> seen{};
    int count = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[static_cast<std::size_t>(i)]) {
            continue;
        }
        ++count;
        for (int j = i; !seen[static_cast<std::size_t>(j)]; j = p[j]) {
            seen[static_cast<std::size_t>(j)] = true;
        }
    }
    return count;
}

int parity(const Perm& p) {
    // n - (number of cycles) transpositions
    return (p.degree() - cycle_count(p)) & 1;
}

bool is_cyclic(const Perm& p) {
    // walk the orbit of 0; avoids a full cycle count in hot loops
    int len = 1;
    for (int j = p[0]; j != 0; j = p[j]) {
        ++len;
    }
    return len == p.degree();
}

std::vector<std::vector<int>> cycles(const Perm& p) {
    std::vector<std::vector<int>> out;
    std::array<bool, Perm::kMaxDegree> seen{};
    for (int i = 0; i < p.degree(); ++i) {
        if (seen[static_cast<std::size_t>(i)]) {
            continue;
        }
        auto& c = out.emplace_back();
        for (int j = i; !seen[static_cast<std::size_t>(j)]; j = p[j]) {
            seen[static_cast<std::size_t>(j)] = true;
            c.push_back(j);
        }
    }
    return out;
}

std::vector<int> cycle_type(const Perm& p) {
    std::vector<int> type;
    for (const auto& c : cycles(p)) {
        type.push_back(static_cast<int>(c.size()));
    }
    std::sort(type.begin(), type.end());
    return type;
}

Perm parse_cycles(std::string_view text, int n) {
    check_degree(n);
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    };
    auto fail = [&](const std::string& why) -> FormatError {
        return FormatError("bad cycle notation '" + std::string(text) + "': " + why);
    };

    skip_ws();
    std::string_view rest = text.substr(pos);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) {
        rest.remove_suffix(1);
    }
    if (rest == "I") {
        return Perm(n);
    }

    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    std::vector<bool> used(static_cast<std::size_t>(n), false);

    // "()" is only accepted as the whole text
    {
        std::string compact;
        for (char ch : rest) {
            if (!std::isspace(static_cast<unsigned char>(ch))) {
                compact.push_back(ch);
            }
        }
        if (compact == "()") {
            return Perm(n);
        }
    }
    if (rest.empty()) {
        throw fail("empty");
    }

    while (true) {
        skip_ws();
        if (pos == text.size()) {
            break;
        }
        if (text[pos] != '(') {
            throw fail("expected '('");
        }
        ++pos;
        std::vector<int> cyc;
        while (true) {
            while (pos < text.size() &&
                   (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) {
                ++pos;
            }
            if (pos == text.size()) {
                throw fail("unterminated cycle");
            }
            if (text[pos] == ')') {
                ++pos;
                break;
            }
            if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
                throw fail(std::string("unexpected character '") + text[pos] + "'");
            }
            long v = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                v = v * 10 + (text[pos] - '0');
                if (v > 1000000) {
                    throw fail("symbol too large");
                }
                ++pos;
            }
            if (v < 1 || v > n) {
                throw fail("symbol " + std::to_string(v) + " outside [1," + std::to_string(n) + "]");
            }
            const int s = static_cast<int>(v) - 1;
            if (used[static_cast<std::size_t>(s)]) {
                throw fail("repeated symbol " + std::to_string(v));
            }
            used[static_cast<std::size_t>(s)] = true;
            cyc.push_back(s);
        }
        if (cyc.size() < 2) {
            throw fail("a cycle needs at least two symbols");
        }
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            img[static_cast<std::size_t>(cyc[i])] = cyc[(i + 1) % cyc.size()];
        }
    }
    return Perm::from_images(img);
}

std::string format_cycles(const Perm& p) {
    std::string out;
    for (const auto& c : cycles(p)) {
        if (c.size() < 2) {
            continue;
        }
        out.push_back('(');
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i > 0) {
                out.push_back(' ');
            }
            out += std::to_string(c[i] + 1);
        }
        out.push_back(')');
    }
    return out.empty() ? "I" : out;
}

std::uint64_t factorial(int n) {
    if (n < 0 || n > 20) {
        throw PreconditionError("factorial out of range");
    }
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) {
        f *= static_cast<std::uint64_t>(i);
    }
    return f;
}

std::uint64_t rank(const Perm& p) {
    const int n = p.degree();
    if (n > 20) {
        throw PreconditionError("rank: degree above 20");
    }
    std::uint64_t r = 0;
    std::uint32_t used = 0;
    for (int i = 0; i < n; ++i) {
        const int v = p[i];
        const int smaller_unused = v - __builtin_popcount(used & ((1u << v) - 1u));
        r = r * static_cast<std::uint64_t>(n - i) + static_cast<std::uint64_t>(smaller_unused);
        used |= 1u << v;
    }
    return r;
}

Perm unrank(int n, std::uint64_t r) {
    check_degree(n);
    if (n > 20 || r >= factorial(n)) {
        throw PreconditionError("unrank: rank out of range");
    }
    std::array<int, Perm::kMaxDegree> digits{};
    for (int i = n - 1; i >= 0; --i) {
        const auto base = static_cast<std::uint64_t>(n - i);
        digits[static_cast<std::size_t>(i)] = static_cast<int>(r % base);
        r /= base;
    }
    std::array<int, Perm::kMaxDegree> img{};
    std::uint32_t used = 0;
    for (int i = 0; i < n; ++i) {
        int k = digits[static_cast<std::size_t>(i)];
        int v = 0;
        for (;; ++v) {
            if (used & (1u << v)) {
                continue;
            }
            if (k-- == 0) {
                break;
            }
        }
        used |= 1u << v;
        img[static_cast<std::size_t>(i)] = v;
    }
    return Perm::from_images(std::span<const int>(img.data(), static_cast<std::size_t>(n)));
}

std::vector<Perm> cyclic_permutations(int n) {
    check_degree(n);
    std::vector<Perm> out;
    if (n == 1) {
        out.emplace_back(1); // the lone point is a single cycle
        return out;
    }
    std::vector<int> order(static_cast<std::size_t>(n - 1));
    std::iota(order.begin(), order.end(), 1);
    std::vector<int> img(static_cast<std::size_t>(n));
    do {
        int prev = 0;
        for (int v : order) {
            img[static_cast<std::size_t>(prev)] = v;
            prev = v;
        }
        img[static_cast<std::size_t>(prev)] = 0;
        out.push_back(Perm::from_images(img));
    } while (std::next_permutation(order.begin(), order.end()));
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
    std::size_t h = static_cast<std::size_t>(p.degree()) * 0x9e3779b97f4a7c15ULL;
    for (auto v : p.images()) {
        h = (h ^ v) * 0x100000001b3ULL;
    }
    return h;
}

} // namespace twodd
