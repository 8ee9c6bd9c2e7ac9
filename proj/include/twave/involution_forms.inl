// Template bodies for the closed forms declared in involution.hpp.
#pragma once

#include "twave/errors.hpp"

#include <string>

namespace twave {

namespace detail {

template <class T>
T power_gap(const T& u, const T& w, int e) {
    return ipow(u, e) - ipow(w, e);
}

} // namespace detail

template <class T>
T g_diff_closed_form(ClosedForm form, int n, const T& u, const T& w) {
    if (!form_applies(form, n))
        throw ContractError(std::string("closed form ") + std::string(to_string(form)) +
                            " does not apply to n = " + std::to_string(n));
    using detail::power_gap;
    const T uw = u * w;
    const T upw = u + w;
    T sum(0);
    switch (form) {
    case ClosedForm::DifferenceEven:
    case ClosedForm::DifferenceOdd:
        for (int i = 1; i <= n / 2; ++i)
            sum += T(n + 1 - 2 * i) * ipow(uw, i - 1) * power_gap(u, w, n + 1 - 2 * i);
        return sum;

    case ClosedForm::EvenDecomposition: {
        T head = ipow(u, n - 1) + ipow(w, n - 1) + T(2) * ipow(u, n - 2) * w;
        for (int i = 1; i <= (n - 4) / 2; ++i) head += ipow(u, 2 * i) * ipow(w, n - 1 - 2 * i);
        for (int i = 0; i <= (n - 4) / 2; ++i)
            sum += T(n - 1 - 2 * i) * ipow(u, 2 * i) * ipow(w, n - 2 - 2 * i);
        return head + upw * sum;
    }

    case ClosedForm::OddDecomposition: {
        T head = ipow(u, n - 1) + ipow(w, n - 1);
        for (int i = 1; i <= (n - 3) / 2; ++i) head += ipow(u, 2 * i) * ipow(w, n - 1 - 2 * i);
        for (int i = 0; i <= (n - 3) / 2; ++i)
            sum += T(n - 1 - 2 * i) * ipow(u, 2 * i) * ipow(w, n - 2 - 2 * i);
        return head + upw * sum;
    }

    case ClosedForm::Difference4mPlus2: {
        const int m = (n - 2) / 4;
        T twice(0);
        for (int i = 0; i < m; ++i) {
            const T weight = ipow(uw, 2 * i);
            sum += T(4 * m - 1 - 4 * i) * power_gap(u, w, 4 * m - 4 * i) * weight;
            twice += power_gap(u, w, 4 * m + 1 - 4 * i) * weight;
        }
        return upw * sum + T(2) * twice + ipow(uw, 2 * m) * (u - w);
    }

    case ClosedForm::Difference4m: {
        const int m = n / 4;
        T twice(0);
        for (int i = 0; i < m; ++i) {
            const T weight = ipow(uw, 2 * i);
            sum += T(4 * m - 3 - 4 * i) * power_gap(u, w, 4 * m - 2 - 4 * i) * weight;
            twice += power_gap(u, w, 4 * m - 1 - 4 * i) * weight;
        }
        return upw * sum + T(2) * twice;
    }

    case ClosedForm::Difference4mPlus1: {
        const int m = (n - 1) / 4;
        T twice(0);
        for (int i = 0; i < m; ++i) {
            const T weight = ipow(uw, 2 * i);
            sum += T(4 * m - 2 - 4 * i) * power_gap(u, w, 4 * m - 1 - 4 * i) * weight;
            twice += power_gap(u, w, 4 * m - 4 * i) * weight;
        }
        return upw * sum + T(2) * twice;
    }

    case ClosedForm::Difference4mPlus3: {
        const int m = (n - 3) / 4;
        T twice(0);
        for (int i = 0; i < m; ++i)
            sum += T(4 * m - 4 * i) * power_gap(u, w, 4 * m + 1 - 4 * i) * ipow(uw, 2 * i);
        for (int i = 0; i <= m; ++i)
            twice += power_gap(u, w, 4 * m + 2 - 4 * i) * ipow(uw, 2 * i);
        return upw * sum + T(2) * twice;
    }
    }
    throw ContractError("unknown closed form");
}

template <class T>
T g_diff(int n, const T& u, const T& w) {
    switch (n % 4) {
    case 0: return g_diff_closed_form(ClosedForm::Difference4m, n, u, w);
    case 1: return g_diff_closed_form(ClosedForm::Difference4mPlus1, n, u, w);
    case 2: return g_diff_closed_form(ClosedForm::Difference4mPlus2, n, u, w);
    default: return g_diff_closed_form(ClosedForm::Difference4mPlus3, n, u, w);
    }
}

} // namespace twave
