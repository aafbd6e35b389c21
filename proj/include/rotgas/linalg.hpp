#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace rotgas {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }

    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

using Vec4 = std::array<double, 4>;

struct Mat3 {
    std::array<double, 9> a{};

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(3 * i + j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(3 * i + j)]; }

    static Mat3 identity() {
        Mat3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        return m;
    }
    static Mat3 diag(double d0, double d1, double d2) {
        Mat3 m;
        m(0, 0) = d0;
        m(1, 1) = d1;
        m(2, 2) = d2;
        return m;
    }

    Vec3 operator*(const Vec3& v) const {
        Vec3 r;
        for (int i = 0; i < 3; ++i)
            r[i] = (*this)(i, 0) * v.x + (*this)(i, 1) * v.y + (*this)(i, 2) * v.z;
        return r;
    }

    double det() const {
        const Mat3& m = *this;
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
               m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }

    Mat3 inverse() const {
        const Mat3& m = *this;
        double d = det();
        if (std::abs(d) < 1e-300) throw std::domain_error("Mat3::inverse: singular matrix");
        Mat3 r;
        r(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) / d;
        r(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) / d;
        r(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) / d;
        r(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) / d;
        r(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) / d;
        r(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) / d;
        r(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) / d;
        r(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) / d;
        r(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / d;
        return r;
    }
};

struct Mat4 {
    std::array<double, 16> a{};

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(4 * i + j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(4 * i + j)]; }

    static Mat4 identity() {
        Mat4 m;
        for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
        return m;
    }

    Mat4 operator*(const Mat4& o) const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int k = 0; k < 4; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }

    Vec4 operator*(const Vec4& v) const {
        Vec4 r{};
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k) r[static_cast<std::size_t>(i)] += (*this)(i, k) * v[static_cast<std::size_t>(k)];
        return r;
    }

    Mat4 transposed() const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    // Gauss-Jordan with partial pivoting; 4x4 only, throws on singularity.
    Mat4 inverse() const {
        std::array<std::array<double, 8>, 4> w{};
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j);
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(4 + i)] = 1.0;
        }
        for (int col = 0; col < 4; ++col) {
            int piv = col;
            for (int r = col + 1; r < 4; ++r)
                if (std::abs(w[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
                    std::abs(w[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
                    piv = r;
            if (std::abs(w[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]) < 1e-300)
                throw std::domain_error("Mat4::inverse: singular matrix");
            std::swap(w[static_cast<std::size_t>(piv)], w[static_cast<std::size_t>(col)]);
            double d = w[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            for (int j = 0; j < 8; ++j) w[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] /= d;
            for (int r = 0; r < 4; ++r) {
                if (r == col) continue;
                double f = w[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
                if (f == 0.0) continue;
                for (int j = 0; j < 8; ++j)
                    w[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
                        f * w[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
            }
        }
        Mat4 inv;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) inv(i, j) = w[static_cast<std::size_t>(i)][static_cast<std::size_t>(4 + j)];
        return inv;
    }
};

// Symmetric 3x3 square root via Jacobi eigendecomposition. Used for the
// half-space intertwining map Omega -> sqrt(I) Omega of a general rigid body.
inline void jacobi_eigen3(const Mat3& s, Vec3& eig, Mat3& vecs) {
    Mat3 a = s;
    vecs = Mat3::identity();
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::abs(a(0, 1)) + std::abs(a(0, 2)) + std::abs(a(1, 2));
        if (off < 1e-15 * (std::abs(a(0, 0)) + std::abs(a(1, 1)) + std::abs(a(2, 2)) + 1e-300)) break;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                double phi = 0.5 * std::atan2(2.0 * a(p, q), a(q, q) - a(p, p));
                double c = std::cos(phi), sn = std::sin(phi);
                Mat3 r = Mat3::identity();
                r(p, p) = c;
                r(q, q) = c;
                r(p, q) = sn;
                r(q, p) = -sn;
                // a = r^T a r
                Mat3 tmp;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        double sum = 0.0;
                        for (int k = 0; k < 3; ++k) sum += r(k, i) * a(k, j);
                        tmp(i, j) = sum;
                    }
                Mat3 an;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        double sum = 0.0;
                        for (int k = 0; k < 3; ++k) sum += tmp(i, k) * r(k, j);
                        an(i, j) = sum;
                    }
                a = an;
                Mat3 vn;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        double sum = 0.0;
                        for (int k = 0; k < 3; ++k) sum += vecs(i, k) * r(k, j);
                        vn(i, j) = sum;
                    }
                vecs = vn;
            }
    }
    eig = {a(0, 0), a(1, 1), a(2, 2)};
}

inline Mat3 sym_sqrt(const Mat3& s) {
    Vec3 eig;
    Mat3 v;
    jacobi_eigen3(s, eig, v);
    for (int i = 0; i < 3; ++i) {
        if (eig[i] <= 0.0) throw std::domain_error("sym_sqrt: matrix not positive-definite");
    }
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double sum = 0.0;
            for (int k = 0; k < 3; ++k) sum += v(i, k) * std::sqrt(eig[k]) * v(j, k);
            r(i, j) = sum;
        }
    return r;
}

} // namespace rotgas
