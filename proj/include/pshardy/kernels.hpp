#pragma once

#include "pshardy/quadrature.hpp"
#include "pshardy/types.hpp"

namespace pshardy {

// Poisson kernel P(z, e^{i theta}) = (1-|z|^2) / |e^{i theta} - z|^2,
// evaluated in a form stable as |z| -> 1.
double poisson(const DiskPoint& z, const BoundaryAngle& theta);

// Raw-argument variant used by inner loops; requires |z| < 1.
double poisson_raw(Complex z, double theta);

// Green function G(z, w) = log |(z - w) / (1 - conj(w) z)|; -inf at z = w.
// Symmetric in its arguments by evaluation path.
double green(const DiskPoint& z, const DiskPoint& w);

// gradient of z -> green(z, w) as a complex number (classical gradient)
Complex green_gradient(Complex z, Complex w);

// Poisson integral of a boundary function at z (normalized measure).
QuadratureReport harmonic_extension(const std::function<double(double)>& g,
                                    const DiskPoint& z, double tol = 1e-8,
                                    const std::vector<double>& singular_angles = {});

// (P_t * phi)(z) = int P(t e^{i s}, e^{i theta}) phi-hat ... realized as the
// boundary convolution int phi(s) P(z, e^{i(theta - s)}) dlambda(s) of the
// Poisson kernels themselves: returns int P(t e^{i s}, e^{i th}) P(z, e^{i th})
// dlambda(th), which must equal P(t z, e^{i s}).
double poisson_convolve(double t, double s_angle, const DiskPoint& z,
                        double tol = 1e-10);

}  // namespace pshardy
