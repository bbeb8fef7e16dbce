#include "thetachar/root_system.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace thetachar {

namespace {

constexpr std::size_t kWeylGuard = 1000000;

std::vector<std::vector<Rat>> invert_matrix(const std::vector<std::vector<long>>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = rat(m[i][j]);
        a[i][n + i] = Rat(1);
    }
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) fail(Errc::InvalidInput, "singular Cartan matrix");
        std::swap(a[col], a[pivot]);
        Rat inv = Rat(1) / a[col][col];
        for (int j = 0; j < 2 * n; ++j) a[col][j] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (int j = 0; j < 2 * n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    std::vector<std::vector<Rat>> out(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = a[i][n + j];
    return out;
}

} // namespace

RootSystem::RootSystem(const std::string& type) : name_(type) {
    if (type.size() < 2 || !std::isalpha(static_cast<unsigned char>(type[0])))
        fail(Errc::UnsupportedType, "expected a family letter and a rank, e.g. A2");
    char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(type[0])));
    int n = 0;
    for (std::size_t i = 1; i < type.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(type[i])))
            fail(Errc::UnsupportedType, "malformed type " + type);
        n = n * 10 + (type[i] - '0');
    }
    rank_ = n;
    auto chain = [&](int len) {
        cartan_.assign(len, std::vector<long>(len, 0));
        for (int i = 0; i < len; ++i) cartan_[i][i] = 2;
        for (int i = 0; i + 1 < len; ++i) cartan_[i][i + 1] = cartan_[i + 1][i] = -1;
    };
    switch (fam) {
    case 'A':
        if (n < 1 || n > 7) fail(Errc::UnsupportedType, "A ranks 1..7 only");
        chain(n);
        d_.assign(n, Rat(1));
        break;
    case 'B':
        if (n < 2 || n > 5) fail(Errc::UnsupportedType, "B ranks 2..5 only");
        chain(n);
        cartan_[n - 2][n - 1] = -2;
        d_.assign(n, Rat(1));
        d_[n - 1] = rat(1, 2);
        break;
    case 'C':
        if (n < 2 || n > 5) fail(Errc::UnsupportedType, "C ranks 2..5 only");
        chain(n);
        cartan_[n - 1][n - 2] = -2;
        d_.assign(n, rat(1, 2));
        d_[n - 1] = Rat(1);
        break;
    case 'D':
        if (n < 4 || n > 5) fail(Errc::UnsupportedType, "D ranks 4..5 only");
        chain(n - 1);
        cartan_.resize(n);
        for (auto& row : cartan_) row.resize(n, 0);
        cartan_[n - 1][n - 1] = 2;
        cartan_[n - 3][n - 1] = cartan_[n - 1][n - 3] = -1;
        d_.assign(n, Rat(1));
        break;
    case 'E': {
        if (n < 6 || n > 8) fail(Errc::UnsupportedType, "E ranks 6..8 only");
        cartan_.assign(n, std::vector<long>(n, 0));
        for (int i = 0; i < n; ++i) cartan_[i][i] = 2;
        std::vector<std::pair<int, int>> edges = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}};
        if (n >= 7) edges.push_back({6, 7});
        if (n == 8) edges.push_back({7, 8});
        for (auto [a, b] : edges) cartan_[a - 1][b - 1] = cartan_[b - 1][a - 1] = -1;
        d_.assign(n, Rat(1));
        break;
    }
    case 'F':
        if (n != 4) fail(Errc::UnsupportedType, "F4 only");
        chain(4);
        cartan_[1][2] = -2;
        d_ = {Rat(1), Rat(1), rat(1, 2), rat(1, 2)};
        break;
    case 'G':
        if (n != 2) fail(Errc::UnsupportedType, "G2 only");
        cartan_ = {{2, -1}, {-3, 2}};
        d_ = {rat(1, 3), Rat(1)};
        break;
    default:
        fail(Errc::UnsupportedType, "unknown family " + std::string(1, fam));
    }

    cartan_inv_ = invert_matrix(cartan_);
    gram_.assign(rank_, std::vector<Rat>(rank_));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) gram_[i][j] = cartan_inv_[j][i] * d_[i];
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < i; ++j)
            if (gram_[i][j] != gram_[j][i]) fail(Errc::InvalidInput, "asymmetric weight form");

    build_roots();

    const Root& theta = positive_.back();
    Rat acc(1);
    for (int i = 0; i < rank_; ++i) acc += theta.alpha[i] * d_[i];
    if (!is_integer(acc)) fail(Errc::InvalidInput, "dual Coxeter number not integral");
    dual_coxeter_ = acc.get_num().get_si();

    Rat dmin = d_[0];
    for (const auto& di : d_) dmin = std::min(dmin, di);
    Rat lac = Rat(1) / dmin;
    lacing_ = lac.get_num().get_si();
}

void RootSystem::build_roots() {
    std::map<std::vector<long>, std::pair<WVec, long>> found; // alpha -> (fw, height)
    std::deque<std::vector<long>> queue;
    for (int i = 0; i < rank_; ++i) {
        std::vector<long> a(rank_, 0);
        a[i] = 1;
        found.emplace(a, std::make_pair(simple_root(i), 1L));
        queue.push_back(a);
    }
    while (!queue.empty()) {
        std::vector<long> a = queue.front();
        queue.pop_front();
        auto [fw, h] = found.at(a);
        for (int i = 0; i < rank_; ++i) {
            bool is_simple_i = h == 1 && a[i] == 1;
            if (is_simple_i) continue;
            long ci = fw[i].get_num().get_si(); // pairing with the i-th coroot
            long p = 0;
            std::vector<long> down = a;
            while (true) {
                down[i] -= 1;
                if (!found.count(down)) break;
                ++p;
            }
            if (p >= 1 + ci) {
                std::vector<long> up = a;
                up[i] += 1;
                if (!found.count(up)) {
                    WVec nfw = fw + simple_root(i);
                    found.emplace(up, std::make_pair(nfw, h + 1));
                    queue.push_back(up);
                }
            }
        }
    }
    positive_.reserve(found.size());
    for (auto& [a, info] : found) {
        Root r;
        r.alpha = a;
        r.fw = info.first;
        r.height = info.second;
        r.length2 = norm2(r.fw);
        positive_.push_back(std::move(r));
    }
    std::sort(positive_.begin(), positive_.end(), [](const Root& x, const Root& y) {
        if (x.height != y.height) return x.height < y.height;
        return x.alpha < y.alpha;
    });
    for (std::size_t i = 0; i < positive_.size(); ++i)
        root_index_.emplace(std::vector<Rat>(positive_[i].fw), static_cast<int>(i));
    if (positive_.back().length2 != 2)
        fail(Errc::InvalidInput, "highest root is not normalized to length 2");
}

Rat RootSystem::inner(const WVec& a, const WVec& b) const {
    if (static_cast<int>(a.size()) != rank_ || static_cast<int>(b.size()) != rank_)
        fail(Errc::InvalidInput, "weight rank mismatch");
    Rat s(0);
    for (int i = 0; i < rank_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < rank_; ++j) s += a[i] * gram_[i][j] * b[j];
    }
    return s;
}

WVec RootSystem::simple_root(int i) const {
    WVec v(rank_);
    for (int j = 0; j < rank_; ++j) v[j] = rat(cartan_[i][j]);
    return v;
}

WVec RootSystem::fundamental_weight(int i) const {
    WVec v(rank_, Rat(0));
    v[i] = Rat(1);
    return v;
}

WVec RootSystem::rho_check() const {
    WVec v(rank_);
    for (int i = 0; i < rank_; ++i) v[i] = Rat(1) / d_[i];
    return v;
}

WVec RootSystem::coroot(const WVec& root_fw) const {
    Rat len2 = norm2(root_fw);
    if (len2 == 0) fail(Errc::ZeroRoot, "coroot of the zero vector");
    return (Rat(2) / len2) * root_fw;
}

bool RootSystem::is_positive_root(const WVec& v) const { return root_index_.count(v) > 0; }

bool RootSystem::is_root(const WVec& v) const {
    return is_positive_root(v) || is_positive_root(Rat(-1) * v);
}

WVec RootSystem::solve_transposed(const WVec& rhs) const {
    WVec x(rank_, Rat(0));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) x[i] += cartan_inv_[j][i] * rhs[j];
    return x;
}

WVec RootSystem::alpha_coords(const WVec& v) const { return solve_transposed(v); }

Rat RootSystem::height(const WVec& v) const {
    WVec a = alpha_coords(v);
    Rat h(0);
    for (const auto& ai : a) h += ai;
    return h;
}

std::vector<Rat> RootSystem::height_covector() const {
    std::vector<Rat> h(rank_, Rat(0));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) h[i] += cartan_inv_[i][j];
    return h;
}

bool RootSystem::in_root_lattice(const WVec& v) const {
    for (const auto& a : alpha_coords(v))
        if (!is_integer(a)) return false;
    return true;
}

bool RootSystem::in_coroot_lattice(const WVec& v) const {
    WVec a = alpha_coords(v);
    for (int i = 0; i < rank_; ++i)
        if (!is_integer(a[i] * d_[i])) return false;
    return true;
}

bool RootSystem::in_weight_lattice(const WVec& v) const {
    for (const auto& c : v)
        if (!is_integer(c)) return false;
    return true;
}

bool RootSystem::in_coweight_lattice(const WVec& v) const {
    for (int i = 0; i < rank_; ++i)
        if (!is_integer(v[i] * d_[i])) return false;
    return true;
}

std::vector<WVec> RootSystem::coroot_basis() const {
    std::vector<WVec> b;
    b.reserve(rank_);
    for (int i = 0; i < rank_; ++i) b.push_back((Rat(1) / d_[i]) * simple_root(i));
    return b;
}

std::vector<WVec> RootSystem::coweight_basis() const {
    std::vector<WVec> b;
    b.reserve(rank_);
    for (int i = 0; i < rank_; ++i) b.push_back((Rat(1) / d_[i]) * fundamental_weight(i));
    return b;
}

std::vector<WVec> RootSystem::coroot_box(const std::vector<Rat>& box) const {
    if (static_cast<int>(box.size()) != rank_) fail(Errc::InvalidInput, "box rank mismatch");
    std::vector<long> cap(rank_);
    for (int i = 0; i < rank_; ++i) {
        Rat b(0);
        for (int j = 0; j < rank_; ++j) b += abs(cartan_inv_[j][i]) * box[j];
        cap[i] = floor_int(b * d_[i]).get_si();
        if (cap[i] < 0) cap[i] = 0;
    }
    std::vector<WVec> basis = coroot_basis();
    std::vector<WVec> out;
    std::vector<long> n(rank_, 0);
    for (int i = 0; i < rank_; ++i) n[i] = -cap[i];
    while (true) {
        WVec gamma(rank_, Rat(0));
        for (int i = 0; i < rank_; ++i)
            if (n[i] != 0) gamma = gamma + rat(n[i]) * basis[i];
        bool inside = true;
        for (int i = 0; i < rank_ && inside; ++i)
            if (abs(gamma[i]) > box[i]) inside = false;
        if (inside) out.push_back(std::move(gamma));
        int k = 0;
        while (k < rank_ && n[k] == cap[k]) {
            n[k] = -cap[k];
            ++k;
        }
        if (k == rank_) break;
        ++n[k];
    }
    return out;
}

WVec RootSystem::reflect(int i, const WVec& v) const {
    WVec out = v;
    if (v[i] == 0) return out;
    for (int j = 0; j < rank_; ++j) out[j] -= v[i] * cartan_[i][j];
    return out;
}

WVec RootSystem::apply(const WeylElement& w, const WVec& v) const {
    WVec out(rank_, Rat(0));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            if (w.mat[i][j] != 0) out[i] += w.mat[i][j] * v[j];
    return out;
}

const std::vector<WeylElement>& RootSystem::weyl_elements() const {
    return weyl_elements(kWeylGuard);
}

const std::vector<WeylElement>& RootSystem::weyl_elements(std::size_t cap) const {
    if (!weyl_.empty()) return weyl_;
    WeylElement id;
    id.mat.assign(rank_, std::vector<long>(rank_, 0));
    for (int i = 0; i < rank_; ++i) id.mat[i][i] = 1;
    std::vector<WeylElement> elems{id};
    std::map<std::vector<long>, std::size_t> seen;
    std::vector<long> rho_img(rank_, 1);
    seen.emplace(rho_img, 0);
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t at = queue.front();
        queue.pop_front();
        for (int i = 0; i < rank_; ++i) {
            // next = s_i compose current; per column out_j -= A_ij * out_i
            WeylElement next;
            next.mat = elems[at].mat;
            for (int c = 0; c < rank_; ++c) {
                long vi = next.mat[i][c];
                if (vi == 0) continue;
                for (int j = 0; j < rank_; ++j) next.mat[j][c] -= vi * cartan_[i][j];
            }
            std::vector<long> img(rank_, 0);
            for (int r = 0; r < rank_; ++r)
                for (int c = 0; c < rank_; ++c) img[r] += next.mat[r][c];
            if (seen.count(img)) continue;
            next.sign = -elems[at].sign;
            next.word = elems[at].word;
            next.word.push_back(i);
            seen.emplace(img, elems.size());
            queue.push_back(elems.size());
            elems.push_back(std::move(next));
            if (elems.size() > cap)
                fail(Errc::GroupTooLarge, "Weyl group of " + name_ + " exceeds the enumeration cap");
        }
    }
    weyl_ = std::move(elems);
    return weyl_;
}

} // namespace thetachar
