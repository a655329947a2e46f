import nox.sessions

PYTHON_VERSIONS = ['3.8', '3.9', '3.10']
NUMPY_VERSIONS = ['1.20.3', '1.21.6', '1.22.4', '1.23.5', '1.24.4']


nox.options.reuse_existing_virtualenvs = True
nox.options.sessions = [
    'tests',
    'tests_numpy',
]


@nox.session(python=PYTHON_VERSIONS)
def tests(session: nox.sessions.Session, numpy=None):
    """ Run all tests """
    session.install('poetry')
    session.run('poetry', 'install')

    # Specific package versions
    if numpy:
        session.install(f'numpy=={numpy}')

    # Test
    session.run('pytest', 'tests/', '--cov=dcsis')


@nox.session(python=PYTHON_VERSIONS[0])
@nox.parametrize('numpy', NUMPY_VERSIONS)
def tests_numpy(session: nox.sessions.Session, numpy):
    """ Test against a specific numpy version """
    tests(session, numpy)
