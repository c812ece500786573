#include "entaudit/float_rank.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace entaudit {

std::size_t float_rank(const std::vector<std::complex<double>>& data, std::size_t rows,
                       std::size_t cols, double rel_threshold) {
    if (rows == 0 || cols == 0) return 0;
    if (data.size() != rows * cols) throw std::invalid_argument("matrix shape mismatch");
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = data[r * cols + c];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    const double cutoff = rel_threshold * sv(0);
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return sv(0) == 0.0 ? 0 : rank;
}

std::size_t float_rank(const ExactMatrix& m, double rel_threshold) {
    std::vector<std::complex<double>> data(m.data.size());
    for (std::size_t i = 0; i < m.data.size(); ++i)
        data[i] = {m.data[i].re.get_d(), m.data[i].im.get_d()};
    return float_rank(data, m.rows, m.cols, rel_threshold);
}

std::size_t float_schmidt_rank(const std::vector<std::complex<double>>& amps,
                               const std::vector<std::size_t>& left, double rel_threshold) {
    const std::size_t len = amps.size();
    if (len == 0 || (len & (len - 1)) != 0)
        throw std::invalid_argument("amplitude count is not a power of two");
    const std::size_t n = static_cast<std::size_t>(std::countr_zero(len));
    std::vector<std::size_t> l(left);
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    if (l.empty() || l.size() >= n) throw std::invalid_argument("degenerate bipartition");
    std::vector<std::size_t> right;
    for (std::size_t q = 0; q < n; ++q)
        if (!std::binary_search(l.begin(), l.end(), q)) right.push_back(q);
    const std::size_t rows = std::size_t{1} << l.size();
    const std::size_t cols = std::size_t{1} << right.size();
    std::vector<std::complex<double>> data(rows * cols);
    for (std::size_t x = 0; x < len; ++x) {
        std::size_t r = 0, c = 0;
        for (std::size_t q : l) r = (r << 1) | ((x >> (n - 1 - q)) & 1);
        for (std::size_t q : right) c = (c << 1) | ((x >> (n - 1 - q)) & 1);
        data[r * cols + c] = amps[x];
    }
    return float_rank(data, rows, cols, rel_threshold);
}

}  // namespace entaudit
