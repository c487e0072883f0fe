/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/core/tape.hpp
 *
 * Copyright 2026 The tbgan authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include "core/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace tbgan::nn {

/// Node id on a Tape. Values are matrices (rows x cols, row-major); a feature
/// map with C channels over an HxW grid is stored as (C, H*W) and spatial ops
/// take H and W explicitly.
using Var = std::int32_t;

/// Eager define-by-run tape. Every operation evaluates immediately and records
/// its inputs; `gradients` builds the adjoints as *new tape nodes* out of the
/// same primitive set, so gradients are themselves differentiable and
/// higher-order derivatives (gradient-of-gradient-penalty) come out of one
/// mechanism.
template <typename T>
class Tape {
public:
    enum class Op : std::uint8_t {
        leaf,
        add,
        sub,
        mul,
        scale,      // alpha * a
        add_scalar, // a + alpha
        matmul,
        transpose,
        sum,      // all elements -> (1,1)
        fill,     // (1,1) broadcast to (i0,i1)
        row_sum,  // (r,c) -> (r,1)
        row_bcast,// (r,1) -> (r,i0)
        col_sum,  // (r,c) -> (1,c)
        col_bcast,// (1,c) -> (i0,c)
        reshape,
        concat_rows,
        slice_rows,   // rows [i0,i1)
        pad_rows,     // place block at row i0 of a (i1, c) zero matrix
        where_pos,    // b where a>0 else 0
        where_nonpos, // b where a<=0 else 0
        sqrt_,
        recip,
        log_,
        exp_,
        upsample2x, // nearest; i0=H, i1=W of the input
        sumpool2x,  // 2x2 block sums; i0=H, i1=W of the input
        im2col,     // i0=H, i1=W, i2=k (odd); pad=(k-1)/2, stride 1
        col2im,
        stop_grad,
        max_all, // (1,1); not differentiated
    };

    struct Node {
        Op op = Op::leaf;
        Var a = -1, b = -1;
        int rows = 0, cols = 0;
        int i0 = 0, i1 = 0, i2 = 0;
        T alpha = T(0);
        std::vector<T> value;
    };

    Tape() { nodes_.reserve(1 << 12); }

    std::size_t size() const { return nodes_.size(); }
    void clear() { nodes_.clear(); }

    const std::vector<T>& value(Var v) const { return nodes_[std::size_t(v)].value; }
    int rows(Var v) const { return nodes_[std::size_t(v)].rows; }
    int cols(Var v) const { return nodes_[std::size_t(v)].cols; }
    T scalar(Var v) const {
        require(nodes_[std::size_t(v)].value.size() == 1, errc::contract_violation, "scalar() on non-scalar node");
        return nodes_[std::size_t(v)].value[0];
    }

    // ---- graph construction -------------------------------------------------

    Var leaf(int rows, int cols, std::vector<T> values) {
        require(int(values.size()) == rows * cols, errc::contract_violation, "leaf: value size mismatch");
        Node n;
        n.op = Op::leaf;
        n.rows = rows;
        n.cols = cols;
        n.value = std::move(values);
        return push(std::move(n));
    }

    Var leaf_scalar(T v) { return leaf(1, 1, {v}); }

    Var zeros(int rows, int cols) { return leaf(rows, cols, std::vector<T>(std::size_t(rows) * cols, T(0))); }

    Var add(Var a, Var b) { return binary(Op::add, a, b); }
    Var sub(Var a, Var b) { return binary(Op::sub, a, b); }
    Var mul(Var a, Var b) { return binary(Op::mul, a, b); }

    Var scale(Var a, T alpha) {
        Node n = unary_like(Op::scale, a);
        n.alpha = alpha;
        return push(std::move(n));
    }

    Var neg(Var a) { return scale(a, T(-1)); }

    Var add_scalar(Var a, T alpha) {
        Node n = unary_like(Op::add_scalar, a);
        n.alpha = alpha;
        return push(std::move(n));
    }

    Var matmul(Var a, Var b) {
        const Node& na = at(a);
        const Node& nb = at(b);
        require(na.cols == nb.rows, errc::contract_violation, "matmul: inner dimensions differ");
        Node n;
        n.op = Op::matmul;
        n.a = a;
        n.b = b;
        n.rows = na.rows;
        n.cols = nb.cols;
        return push(std::move(n));
    }

    Var transpose(Var a) {
        Node n;
        n.op = Op::transpose;
        n.a = a;
        n.rows = at(a).cols;
        n.cols = at(a).rows;
        return push(std::move(n));
    }

    Var sum(Var a) {
        Node n;
        n.op = Op::sum;
        n.a = a;
        n.rows = 1;
        n.cols = 1;
        return push(std::move(n));
    }

    Var fill(Var scalar_node, int rows, int cols) {
        require(at(scalar_node).rows == 1 && at(scalar_node).cols == 1, errc::contract_violation,
                "fill: source must be scalar");
        Node n;
        n.op = Op::fill;
        n.a = scalar_node;
        n.rows = rows;
        n.cols = cols;
        n.i0 = rows;
        n.i1 = cols;
        return push(std::move(n));
    }

    Var row_sum(Var a) {
        Node n;
        n.op = Op::row_sum;
        n.a = a;
        n.rows = at(a).rows;
        n.cols = 1;
        return push(std::move(n));
    }

    Var row_bcast(Var a, int cols) {
        require(at(a).cols == 1, errc::contract_violation, "row_bcast: input must be a column");
        Node n;
        n.op = Op::row_bcast;
        n.a = a;
        n.rows = at(a).rows;
        n.cols = cols;
        n.i0 = cols;
        return push(std::move(n));
    }

    Var col_sum(Var a) {
        Node n;
        n.op = Op::col_sum;
        n.a = a;
        n.rows = 1;
        n.cols = at(a).cols;
        return push(std::move(n));
    }

    Var col_bcast(Var a, int rows) {
        require(at(a).rows == 1, errc::contract_violation, "col_bcast: input must be a row");
        Node n;
        n.op = Op::col_bcast;
        n.a = a;
        n.rows = rows;
        n.cols = at(a).cols;
        n.i0 = rows;
        return push(std::move(n));
    }

    Var reshape(Var a, int rows, int cols) {
        require(rows * cols == at(a).rows * at(a).cols, errc::contract_violation, "reshape: element count differs");
        Node n;
        n.op = Op::reshape;
        n.a = a;
        n.rows = rows;
        n.cols = cols;
        return push(std::move(n));
    }

    Var concat_rows(Var a, Var b) {
        require(at(a).cols == at(b).cols, errc::contract_violation, "concat_rows: column counts differ");
        Node n;
        n.op = Op::concat_rows;
        n.a = a;
        n.b = b;
        n.rows = at(a).rows + at(b).rows;
        n.cols = at(a).cols;
        return push(std::move(n));
    }

    Var slice_rows(Var a, int r0, int r1) {
        require(0 <= r0 && r0 < r1 && r1 <= at(a).rows, errc::contract_violation, "slice_rows: bad range");
        Node n;
        n.op = Op::slice_rows;
        n.a = a;
        n.rows = r1 - r0;
        n.cols = at(a).cols;
        n.i0 = r0;
        n.i1 = r1;
        return push(std::move(n));
    }

    Var pad_rows(Var a, int r0, int total_rows) {
        require(r0 >= 0 && r0 + at(a).rows <= total_rows, errc::contract_violation, "pad_rows: bad placement");
        Node n;
        n.op = Op::pad_rows;
        n.a = a;
        n.rows = total_rows;
        n.cols = at(a).cols;
        n.i0 = r0;
        n.i1 = total_rows;
        return push(std::move(n));
    }

    Var where_pos(Var cond, Var a) { return masked(Op::where_pos, cond, a); }
    Var where_nonpos(Var cond, Var a) { return masked(Op::where_nonpos, cond, a); }

    Var sqrt(Var a) { return push(unary_like(Op::sqrt_, a)); }
    Var recip(Var a) { return push(unary_like(Op::recip, a)); }
    Var log(Var a) { return push(unary_like(Op::log_, a)); }
    Var exp(Var a) { return push(unary_like(Op::exp_, a)); }
    Var stop_grad(Var a) { return push(unary_like(Op::stop_grad, a)); }

    Var max_all(Var a) {
        Node n;
        n.op = Op::max_all;
        n.a = a;
        n.rows = 1;
        n.cols = 1;
        return push(std::move(n));
    }

    Var upsample2x(Var a, int h, int w) {
        require(at(a).cols == h * w, errc::contract_violation, "upsample2x: H*W mismatch");
        Node n;
        n.op = Op::upsample2x;
        n.a = a;
        n.rows = at(a).rows;
        n.cols = 4 * h * w;
        n.i0 = h;
        n.i1 = w;
        return push(std::move(n));
    }

    Var sumpool2x(Var a, int h, int w) {
        require(at(a).cols == h * w && h % 2 == 0 && w % 2 == 0, errc::contract_violation,
                "sumpool2x: H and W must be even and match");
        Node n;
        n.op = Op::sumpool2x;
        n.a = a;
        n.rows = at(a).rows;
        n.cols = h * w / 4;
        n.i0 = h;
        n.i1 = w;
        return push(std::move(n));
    }

    Var im2col(Var a, int h, int w, int k) {
        require(at(a).cols == h * w && k % 2 == 1, errc::contract_violation, "im2col: bad geometry");
        Node n;
        n.op = Op::im2col;
        n.a = a;
        n.rows = at(a).rows * k * k;
        n.cols = h * w;
        n.i0 = h;
        n.i1 = w;
        n.i2 = k;
        return push(std::move(n));
    }

    Var col2im(Var a, int channels, int h, int w, int k) {
        require(at(a).rows == channels * k * k && at(a).cols == h * w, errc::contract_violation,
                "col2im: bad geometry");
        Node n;
        n.op = Op::col2im;
        n.a = a;
        n.rows = channels;
        n.cols = h * w;
        n.i0 = h;
        n.i1 = w;
        n.i2 = k;
        return push(std::move(n));
    }

    // ---- differentiation ----------------------------------------------------

    /// Adjoints of `out` (a scalar node) with respect to each node in `wrt`.
    /// Contributions are built from tape primitives, so the returned nodes can
    /// be differentiated again.
    std::vector<Var> gradients(Var out, std::span<const Var> wrt) {
        require(at(out).rows == 1 && at(out).cols == 1, errc::contract_violation,
                "gradients: output must be scalar");
        const std::size_t frontier = std::size_t(out) + 1;
        std::vector<char> needed(frontier, 0);
        std::vector<Var> stack{out};
        needed[std::size_t(out)] = 1;
        while (!stack.empty()) {
            const Node& n = at(stack.back());
            stack.pop_back();
            if (n.op == Op::stop_grad || n.op == Op::max_all)
                continue; // gradient does not flow through
            for (Var in : {n.a, n.b})
                if (in >= 0 && !needed[std::size_t(in)]) {
                    needed[std::size_t(in)] = 1;
                    stack.push_back(in);
                }
        }

        std::vector<Var> adj(frontier, -1);
        adj[std::size_t(out)] = leaf_scalar(T(1));
        for (std::int64_t i = out; i >= 0; --i) {
            if (!needed[std::size_t(i)] || adj[std::size_t(i)] < 0)
                continue;
            backprop_node(Var(i), adj[std::size_t(i)], adj);
        }

        std::vector<Var> result;
        result.reserve(wrt.size());
        for (Var w : wrt) {
            require(w >= 0 && std::size_t(w) < frontier, errc::contract_violation,
                    "gradients: wrt node created after output");
            result.push_back(adj[std::size_t(w)] >= 0 ? adj[std::size_t(w)] : zeros(at(w).rows, at(w).cols));
        }
        return result;
    }

    Var gradient(Var out, Var wrt) { return gradients(out, std::span<const Var>(&wrt, 1))[0]; }

private:
    std::vector<Node> nodes_;

    const Node& at(Var v) const { return nodes_[std::size_t(v)]; }

    Node unary_like(Op op, Var a) {
        Node n;
        n.op = op;
        n.a = a;
        n.rows = at(a).rows;
        n.cols = at(a).cols;
        return n;
    }

    Var binary(Op op, Var a, Var b) {
        require(at(a).rows == at(b).rows && at(a).cols == at(b).cols, errc::contract_violation,
                "elementwise op: shapes differ");
        Node n;
        n.op = op;
        n.a = a;
        n.b = b;
        n.rows = at(a).rows;
        n.cols = at(a).cols;
        return push(std::move(n));
    }

    Var masked(Op op, Var cond, Var a) {
        require(at(cond).rows == at(a).rows && at(cond).cols == at(a).cols, errc::contract_violation,
                "mask op: shapes differ");
        Node n;
        n.op = op;
        n.a = cond;
        n.b = a;
        n.rows = at(a).rows;
        n.cols = at(a).cols;
        return push(std::move(n));
    }

    Var push(Node n) {
        if (n.op != Op::leaf)
            evaluate(n);
        nodes_.push_back(std::move(n));
        return Var(nodes_.size() - 1);
    }

    void accumulate(std::vector<Var>& adj, Var target, Var contribution) {
        Var& slot = adj[std::size_t(target)];
        slot = (slot < 0) ? contribution : add(slot, contribution);
    }

    void backprop_node(Var v, Var g, std::vector<Var>& adj) {
        // Copy the node header: appending adjoint nodes may reallocate nodes_.
        const Op op = at(v).op;
        const Var a = at(v).a;
        const Var b = at(v).b;
        const int i0 = at(v).i0, i1 = at(v).i1, i2 = at(v).i2;
        const T alpha = at(v).alpha;
        switch (op) {
        case Op::leaf:
        case Op::stop_grad:
        case Op::max_all:
            break;
        case Op::add:
            accumulate(adj, a, g);
            accumulate(adj, b, g);
            break;
        case Op::sub:
            accumulate(adj, a, g);
            accumulate(adj, b, neg(g));
            break;
        case Op::mul:
            accumulate(adj, a, mul(g, b));
            accumulate(adj, b, mul(g, a));
            break;
        case Op::scale:
            accumulate(adj, a, scale(g, alpha));
            break;
        case Op::add_scalar:
            accumulate(adj, a, g);
            break;
        case Op::reshape:
            accumulate(adj, a, reshape(g, at(a).rows, at(a).cols));
            break;
        case Op::matmul:
            accumulate(adj, a, matmul(g, transpose(b)));
            accumulate(adj, b, matmul(transpose(a), g));
            break;
        case Op::transpose:
            accumulate(adj, a, transpose(g));
            break;
        case Op::sum:
            accumulate(adj, a, fill(g, at(a).rows, at(a).cols));
            break;
        case Op::fill:
            accumulate(adj, a, sum(g));
            break;
        case Op::row_sum:
            accumulate(adj, a, row_bcast(g, at(a).cols));
            break;
        case Op::row_bcast:
            accumulate(adj, a, row_sum(g));
            break;
        case Op::col_sum:
            accumulate(adj, a, col_bcast(g, at(a).rows));
            break;
        case Op::col_bcast:
            accumulate(adj, a, col_sum(g));
            break;
        case Op::concat_rows:
            accumulate(adj, a, slice_rows(g, 0, at(a).rows));
            accumulate(adj, b, slice_rows(g, at(a).rows, at(a).rows + at(b).rows));
            break;
        case Op::slice_rows:
            accumulate(adj, a, pad_rows(g, i0, at(a).rows));
            break;
        case Op::pad_rows:
            accumulate(adj, a, slice_rows(g, i0, i0 + at(a).rows));
            break;
        case Op::where_pos:
            accumulate(adj, b, where_pos(a, g)); // mask input a is not differentiated
            break;
        case Op::where_nonpos:
            accumulate(adj, b, where_nonpos(a, g));
            break;
        case Op::sqrt_:
            accumulate(adj, a, mul(g, scale(recip(v), T(0.5))));
            break;
        case Op::recip:
            accumulate(adj, a, neg(mul(g, mul(v, v))));
            break;
        case Op::log_:
            accumulate(adj, a, mul(g, recip(a)));
            break;
        case Op::exp_:
            accumulate(adj, a, mul(g, v));
            break;
        case Op::upsample2x:
            accumulate(adj, a, sumpool2x(g, 2 * i0, 2 * i1));
            break;
        case Op::sumpool2x:
            accumulate(adj, a, upsample2x(g, i0 / 2, i1 / 2));
            break;
        case Op::im2col:
            accumulate(adj, a, col2im(g, at(a).rows, i0, i1, i2));
            break;
        case Op::col2im:
            accumulate(adj, a, im2col(g, i0, i1, i2));
            break;
        }
    }

    void evaluate(Node& n) {
        const std::size_t count = std::size_t(n.rows) * std::size_t(n.cols);
        n.value.resize(count);
        T* out = n.value.data();
        const T* A = n.a >= 0 ? at(n.a).value.data() : nullptr;
        const T* B = n.b >= 0 ? at(n.b).value.data() : nullptr;
        switch (n.op) {
        case Op::leaf:
            break;
        case Op::add:
            for (std::size_t i = 0; i < count; ++i)
                out[i] = A[i] + B[i];
            break;
        case Op::sub:
            for (std::size_t i = 0; i < count; ++i)
                out[i] = A[i] - B[i];
            break;
        case Op::mul:
            for (std::size_t i = 0; i < count; ++i)
                out[i] = A[i] * B[i];
            break;
        case Op::scale:
            for (std::size_t i = 0; i < count; ++i)
                out[i] = n.alpha * A[i];
            break;
        case Op::add_scalar:
            for (std::size_t i = 0; i < count; ++i)
                out[i] = A[i] + n.alpha;
            break;
        case Op::matmul: {
            const int m = n.rows, k = at(n.a).cols, c = n.cols;
            for (int i = 0; i < m; ++i) {
                T* ci = out + std::size_t(i) * c;
                for (int j = 0; j < c; ++j)
                    ci[j] = T(0);
                const T* ai = A + std::size_t(i) * k;
                for (int p = 0; p < k; ++p) {
                    const T av = ai[p];
                    const T* bp = B + std::size_t(p) * c;
                    for (int j = 0; j < c; ++j)
                        ci[j] += av * bp[j];
                }
            }
            break;
        }
        case Op::transpose: {
            const int r = at(n.a).rows, c = at(n.a).cols;
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j)
                    out[std::size_t(j) * r + i] = A[std::size_t(i) * c + j];
            break;
        }
        case Op::sum: {
            T acc = T(0);
            const std::size_t na = at(n.a).value.size();
            for (std::size_t i = 0; i < na; ++i)
                acc += A[i];
            out[0] = acc;
            break;
        }
        case Op::fill:
            for (std::size_t i = 0; i < count; ++i)
                out[i] = A[0];
            break;
        case Op::row_sum: {
            const int r = at(n.a).rows, c = at(n.a).cols;
            for (int i = 0; i < r; ++i) {
                T acc = T(0);
                const T* ai = A + std::size_t(i) * c;
                for (int j = 0; j < c; ++j)
                    acc += ai[j];
                out[i] = acc;
            }
            break;
        }
        case Op::row_bcast: {
            const int r = n.rows, c = n.cols;
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j)
                    out[std::size_t(i) * c + j] = A[i];
            break;
        }
        case Op::col_sum: {
            const int r = at(n.a).rows, c = at(n.a).cols;
            for (int j = 0; j < c; ++j)
                out[j] = T(0);
            for (int i = 0; i < r; ++i) {
                const T* ai = A + std::size_t(i) * c;
                for (int j = 0; j < c; ++j)
                    out[j] += ai[j];
            }
            break;
        }
        case Op::col_bcast: {
            const int r = n.rows, c = n.cols;
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j)
                    out[std::size_t(i) * c + j] = A[j];
            break;
        }
        case Op::reshape:
        case Op::stop_grad:
            std::copy(at(n.a).value.begin(), at(n.a).value.end(), out);
            break;
        case Op::concat_rows:
            std::copy(at(n.a).value.begin(), at(n.a).value.end(), out);
            std::copy(at(n.b).value.begin(), at(n.b).value.end(), out + at(n.a).value.size());
            break;
        case Op::slice_rows:
            std::copy(at(n.a).value.begin() + std::size_t(n.i0) * n.cols,
                      at(n.a).value.begin() + std::size_t(n.i1) * n.cols, out);
            break;
        case Op::pad_rows:
            std::fill(out, out + count, T(0));
            std::copy(at(n.a).value.begin(), at(n.a).value.end(), out + std::size_t(n.i0) * n.cols);
            break;
        case Op::where_pos:
            for (std::size_t i = 0; i < count; ++i)
                out[i] = A[i] > T(0) ? B[i] : T(0);
            break;
        case Op::where_nonpos:
            for (std::size_t i = 0; i < count; ++i)
                out[i] = A[i] > T(0) ? T(0) : B[i];
            break;
        case Op::sqrt_:
            for (std::size_t i = 0; i < count; ++i)
                out[i] = std::sqrt(A[i]);
            break;
        case Op::recip:
            for (std::size_t i = 0; i < count; ++i)
                out[i] = T(1) / A[i];
            break;
        case Op::log_:
            for (std::size_t i = 0; i < count; ++i)
                out[i] = std::log(A[i]);
            break;
        case Op::exp_:
            for (std::size_t i = 0; i < count; ++i)
                out[i] = std::exp(A[i]);
            break;
        case Op::max_all: {
            T best = A[0];
            const std::size_t na = at(n.a).value.size();
            for (std::size_t i = 1; i < na; ++i)
                best = A[i] > best ? A[i] : best;
            out[0] = best;
            break;
        }
        case Op::upsample2x: {
            const int ch = n.rows, h = n.i0, w = n.i1;
            for (int c = 0; c < ch; ++c) {
                const T* in = A + std::size_t(c) * h * w;
                T* oc = out + std::size_t(c) * 4 * h * w;
                for (int y = 0; y < 2 * h; ++y) {
                    const T* irow = in + std::size_t(y / 2) * w;
                    T* orow = oc + std::size_t(y) * 2 * w;
                    for (int x = 0; x < 2 * w; ++x)
                        orow[x] = irow[x / 2];
                }
            }
            break;
        }
        case Op::sumpool2x: {
            const int ch = n.rows, h = n.i0, w = n.i1;
            const int oh = h / 2, ow = w / 2;
            for (int c = 0; c < ch; ++c) {
                const T* in = A + std::size_t(c) * h * w;
                T* oc = out + std::size_t(c) * oh * ow;
                for (int y = 0; y < oh; ++y) {
                    const T* r0 = in + std::size_t(2 * y) * w;
                    const T* r1 = r0 + w;
                    for (int x = 0; x < ow; ++x)
                        oc[std::size_t(y) * ow + x] = r0[2 * x] + r0[2 * x + 1] + r1[2 * x] + r1[2 * x + 1];
                }
            }
            break;
        }
        case Op::im2col: {
            const int ch = at(n.a).rows, h = n.i0, w = n.i1, k = n.i2, pad = (n.i2 - 1) / 2;
            for (int c = 0; c < ch; ++c) {
                const T* in = A + std::size_t(c) * h * w;
                for (int ky = 0; ky < k; ++ky)
                    for (int kx = 0; kx < k; ++kx) {
                        T* orow = out + std::size_t((c * k + ky) * k + kx) * h * w;
                        for (int y = 0; y < h; ++y) {
                            const int sy = y + ky - pad;
                            T* od = orow + std::size_t(y) * w;
                            if (sy < 0 || sy >= h) {
                                std::fill(od, od + w, T(0));
                                continue;
                            }
                            const T* irow = in + std::size_t(sy) * w;
                            for (int x = 0; x < w; ++x) {
                                const int sx = x + kx - pad;
                                od[x] = (sx >= 0 && sx < w) ? irow[sx] : T(0);
                            }
                        }
                    }
            }
            break;
        }
        case Op::col2im: {
            const int ch = n.rows, h = n.i0, w = n.i1, k = n.i2, pad = (n.i2 - 1) / 2;
            std::fill(out, out + count, T(0));
            for (int c = 0; c < ch; ++c) {
                T* oc = out + std::size_t(c) * h * w;
                for (int ky = 0; ky < k; ++ky)
                    for (int kx = 0; kx < k; ++kx) {
                        const T* arow = A + std::size_t((c * k + ky) * k + kx) * h * w;
                        for (int y = 0; y < h; ++y) {
                            const int sy = y + ky - pad;
                            if (sy < 0 || sy >= h)
                                continue;
                            T* orow = oc + std::size_t(sy) * w;
                            const T* ad = arow + std::size_t(y) * w;
                            for (int x = 0; x < w; ++x) {
                                const int sx = x + kx - pad;
                                if (sx >= 0 && sx < w)
                                    orow[sx] += ad[x];
                            }
                        }
                    }
            }
            break;
        }
        }
    }
};

} // namespace tbgan::nn
