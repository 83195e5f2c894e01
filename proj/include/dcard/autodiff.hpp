#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "dcard/tensor.hpp"

namespace dcard {

/// When false, ops produce value-only nodes (no parents, no backward
/// closures), so inference passes allocate nothing beyond the values.
bool& grad_mode();

struct NoGradGuard {
    bool saved;
    NoGradGuard() : saved(grad_mode()) { grad_mode() = false; }
    ~NoGradGuard() { grad_mode() = saved; }
};

template <typename T>
struct Node {
    Tensor<T> value;
    Tensor<T> grad;  // allocated lazily on first accumulation
    bool requires_grad = false;
    std::vector<std::shared_ptr<Node<T>>> parents;
    std::function<void()> backward_fn;

    Tensor<T>& ensure_grad() {
        if (grad.empty()) grad = Tensor<T>(value.shape);
        return grad;
    }
};

/// Handle to a node in the recorded computation graph. Copy = shared view.
template <typename T>
class Var {
public:
    Var() = default;
    explicit Var(Tensor<T> value, bool requires_grad = false)
        : node_(std::make_shared<Node<T>>()) {
        node_->value = std::move(value);
        node_->requires_grad = requires_grad;
    }

    bool defined() const { return node_ != nullptr; }
    const Tensor<T>& value() const { return node_->value; }
    Tensor<T>& value() { return node_->value; }
    const Shape& shape() const { return node_->value.shape; }
    bool requires_grad() const { return node_->requires_grad; }

    const Tensor<T>& grad() const {
        if (node_->grad.empty()) node_->ensure_grad();
        return node_->grad;
    }
    void zero_grad() {
        if (!node_->grad.empty()) node_->grad.fill(T(0));
    }

    std::shared_ptr<Node<T>>& node() { return node_; }
    const std::shared_ptr<Node<T>>& node() const { return node_; }

private:
    std::shared_ptr<Node<T>> node_;
};

/// Reverse-mode sweep from a scalar loss. Gradients accumulate additively
/// into every reachable node with requires_grad; calling twice without
/// zeroing doubles them.
template <typename T>
void backward(const Var<T>& loss) {
    if (!loss.defined()) throw std::invalid_argument("backward: undefined loss");
    if (loss.value().numel() != 1)
        throw std::invalid_argument("backward: loss must be scalar, got shape " +
                                    loss.shape().str());
    check_finite(loss.value(), "loss");

    // reverse topological order via iterative post-order DFS
    std::vector<Node<T>*> order;
    std::unordered_set<Node<T>*> visited;
    struct Frame {
        Node<T>* node;
        size_t next_parent;
    };
    std::vector<Frame> stack;
    stack.push_back({loss.node().get(), 0});
    visited.insert(loss.node().get());
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next_parent < f.node->parents.size()) {
            Node<T>* p = f.node->parents[f.next_parent++].get();
            if (visited.insert(p).second) stack.push_back({p, 0});
        } else {
            order.push_back(f.node);
            stack.pop_back();
        }
    }

    loss.node()->ensure_grad().data[0] += T(1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Node<T>* node = *it;
        if (node->backward_fn && !node->grad.empty()) node->backward_fn();
    }
}

}  // namespace dcard
