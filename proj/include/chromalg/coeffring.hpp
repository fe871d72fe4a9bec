#pragma once

#include "chromalg/coeffring/finite_field.hpp"
#include "chromalg/coeffring/plocal.hpp"
#include "chromalg/coeffring/tower.hpp"
#include "chromalg/error.hpp"
