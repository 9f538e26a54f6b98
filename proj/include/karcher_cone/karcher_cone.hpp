#ifndef KARCHER_CONE_KARCHER_CONE_HPP
#define KARCHER_CONE_KARCHER_CONE_HPP

#include "karcher_cone/barycenter.hpp"
#include "karcher_cone/errors.hpp"
#include "karcher_cone/hermitian.hpp"
#include "karcher_cone/karcher.hpp"
#include "karcher_cone/measures.hpp"
#include "karcher_cone/random.hpp"
#include "karcher_cone/thompson.hpp"
#include "karcher_cone/transport.hpp"

#endif  // KARCHER_CONE_KARCHER_CONE_HPP
