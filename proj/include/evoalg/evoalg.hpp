#ifndef EVOALG_EVOALG_HPP_
#define EVOALG_EVOALG_HPP_

#include "evoalg/aut.hpp"
#include "evoalg/classify.hpp"
#include "evoalg/der.hpp"
#include "evoalg/error.hpp"
#include "evoalg/field.hpp"
#include "evoalg/linalg.hpp"
#include "evoalg/oracle.hpp"
#include "evoalg/poly.hpp"
#include "evoalg/tensor.hpp"

#endif  // EVOALG_EVOALG_HPP_
