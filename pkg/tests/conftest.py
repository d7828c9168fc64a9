# Anchors pytest's rootdir and puts this directory on sys.path so tests
# can import the naive oracle module.
